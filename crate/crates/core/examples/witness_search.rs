//! Bounded search for exponential warping rates with vanishing SSMC curvature
//! along the comoving field.

use lorentz_ssmc::theorems::suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let search = suite::witness_search(4, 8, 0)?;
    for s in &search.grid {
        println!("rate {:5.2}  |R_bar| {:.3e}", s.rate, s.curvature);
    }
    println!("best rate {:.9} with |R_bar| {:.3e}", search.best.rate, search.best.curvature);
    Ok(())
}
