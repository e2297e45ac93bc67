//! Parse a scalar expression and read off its exact value, gradient and Hessian.

use lorentz_ssmc::expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let coords: Vec<String> = ["t", "r"].map(String::from).to_vec();
    let params = vec!["a".to_string()];
    let e = expr::parse("exp(a*t) * sinh(r)^2", &coords, &params)?;
    println!("expression: {}", e.to_source(&coords, &params));

    let point = [0.4, 0.9];
    let jet = e.evaluate_jet(&point, &[0.5])?;
    println!("value    = {:.12}", jet.value());
    println!("gradient = {:?}", jet.gradient());
    for i in 0..2 {
        println!("hessian[{i}] = [{:.12}, {:.12}]", jet.hessian(i, 0), jet.hessian(i, 1));
    }

    let h = 1e-5;
    let f = |t: f64, r: f64| e.evaluate(&[t, r], &[0.5]).unwrap();
    let fd = (f(point[0] + h, point[1]) - f(point[0] - h, point[1])) / (2.0 * h);
    println!("d/dt by central differences = {fd:.12}");
    Ok(())
}
