//! Dense tensors at a point.
//!
//! Components are stored row-major: slot 0 has the largest stride. Every slot
//! ranges over the same dimension `n`, which is small (3 to 6), so no sparsity
//! or symmetry packing is attempted. All residuals in the crate are Frobenius
//! norms over the full component array.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    fn flipped(self) -> Self {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("cannot contract slots {a} and {b}: both are {variance:?}; supply a metric")]
    MissingMetric { a: usize, b: usize, variance: Variance },
    #[error("metric has the wrong variance for this operation")]
    WrongMetric,
    #[error("slots {a} and {b} have different variance")]
    VarianceMismatch { a: usize, b: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Index pattern for [`DenseTensor::defect_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
    Zero,
}

#[derive(Clone, PartialEq)]
pub struct DenseTensor {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<f64>,
}

impl fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseTensor")
            .field("dim", &self.dim)
            .field("variance", &self.variance)
            .field("data", &self.data)
            .finish()
    }
}

impl DenseTensor {
    pub fn zeros(dim: usize, variance: &[Variance]) -> Self {
        Self {
            dim,
            variance: variance.to_vec(),
            data: vec![0.0; dim.pow(variance.len() as u32)],
        }
    }

    pub fn from_data(dim: usize, variance: &[Variance], data: Vec<f64>) -> Result<Self, TensorError> {
        let expected = dim.pow(variance.len() as u32);
        if data.len() != expected {
            return Err(TensorError::Shape(format!(
                "{} components supplied, rank {} in dimension {dim} needs {expected}",
                data.len(),
                variance.len()
            )));
        }
        Ok(Self {
            dim,
            variance: variance.to_vec(),
            data,
        })
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(dim: usize, variance: &[Variance], mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(dim, variance);
        let mut idx = vec![0; variance.len()];
        for slot in t.data.iter_mut() {
            *slot = f(&idx);
            increment(&mut idx, dim);
        }
        t
    }

    pub fn scalar(value: f64) -> Self {
        Self {
            dim: 0,
            variance: Vec::new(),
            data: vec![value],
        }
    }

    /// Kronecker delta as a mixed `(1,1)` tensor.
    pub fn kronecker(dim: usize) -> Self {
        Self::from_fn(dim, &[Variance::Upper, Variance::Lower], |i| f64::from(u8::from(i[0] == i[1])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Value of a rank-0 tensor (or the first component otherwise).
    pub fn value(&self) -> f64 {
        self.data[0]
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    fn check_slot(&self, slot: usize) -> Result<(), TensorError> {
        if slot >= self.rank() {
            Err(TensorError::SlotOutOfRange { slot, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.dim != other.dim || self.variance != other.variance {
            return Err(TensorError::Shape(format!(
                "({}, {:?}) vs ({}, {:?})",
                self.dim, self.variance, other.dim, other.variance
            )));
        }
        Ok(())
    }

    /// Contracts two slots. Mixed-variance slots contract directly; same-variance
    /// slots need the metric of opposite variance (`g^{ab}` for two lower slots,
    /// `g_{ab}` for two upper slots).
    pub fn contract(&self, a: usize, b: usize, metric: Option<&DenseTensor>) -> Result<Self, TensorError> {
        self.check_slot(a)?;
        self.check_slot(b)?;
        if a == b {
            return Err(TensorError::Shape("cannot contract a slot with itself".into()));
        }
        let (a, b) = (a.min(b), a.max(b));
        let (va, vb) = (self.variance[a], self.variance[b]);
        let n = self.dim;
        let weight: Box<dyn Fn(usize, usize) -> f64> = if va != vb {
            Box::new(|i, j| f64::from(u8::from(i == j)))
        } else {
            let m = metric.ok_or(TensorError::MissingMetric { a, b, variance: va })?;
            let needed = va.flipped();
            if m.rank() != 2 || m.dim != n || m.variance != [needed, needed] {
                return Err(TensorError::WrongMetric);
            }
            let m = m.clone();
            Box::new(move |i, j| m.data[i * n + j])
        };
        let variance: Vec<Variance> = self
            .variance
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != a && *k != b)
            .map(|(_, v)| *v)
            .collect();
        let mut out = Self::zeros(n, &variance);
        let mut full = vec![0; self.rank()];
        let mut ridx = vec![0; variance.len()];
        for value in out.data.iter_mut() {
            let mut k = 0;
            for (slot, item) in full.iter_mut().enumerate() {
                if slot != a && slot != b {
                    *item = ridx[k];
                    k += 1;
                }
            }
            let mut sum = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let w = weight(i, j);
                    if w != 0.0 {
                        full[a] = i;
                        full[b] = j;
                        sum += w * self.get(&full);
                    }
                }
            }
            *value = sum;
            increment(&mut ridx, n);
        }
        Ok(out)
    }

    /// Flips the variance of one slot by contracting with `g_{ab}` (to lower an
    /// upper slot) or `g^{ab}` (to raise a lower slot).
    pub fn raise_lower(&self, slot: usize, metric: &DenseTensor) -> Result<Self, TensorError> {
        self.check_slot(slot)?;
        let n = self.dim;
        let target = self.variance[slot].flipped();
        if metric.rank() != 2 || metric.dim != n || metric.variance != [target, target] {
            return Err(TensorError::WrongMetric);
        }
        let mut variance = self.variance.clone();
        variance[slot] = target;
        let mut src = vec![0; self.rank()];
        Ok(Self::from_fn(n, &variance, |idx| {
            src.copy_from_slice(idx);
            let mut sum = 0.0;
            for l in 0..n {
                src[slot] = l;
                sum += metric.data[idx[slot] * n + l] * self.get(&src);
            }
            sum
        }))
    }

    /// Reorders slots: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, TensorError> {
        if perm.len() != self.rank() {
            return Err(TensorError::Shape("permutation length differs from rank".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            self.check_slot(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(TensorError::Shape("not a permutation".into()));
            }
        }
        let variance: Vec<Variance> = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0; self.rank()];
        Ok(Self::from_fn(self.dim, &variance, |idx| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            self.get(&src)
        }))
    }

    fn swap_slots(&self, a: usize, b: usize) -> Result<Self, TensorError> {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.swap(a, b);
        self.permute(&perm)
    }

    pub fn outer(&self, other: &Self) -> Self {
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        let dim = self.dim.max(other.dim);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { dim, variance, data }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + s * b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// Component-wise inner product (no metric).
    pub fn dot(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Frobenius norm over all components.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Frobenius norm of `self` minus its projection onto `pattern`.
    pub fn defect_norm(&self, pattern: Pattern) -> Result<f64, TensorError> {
        match pattern {
            Pattern::Zero => Ok(self.norm()),
            Pattern::Symmetric(a, b) | Pattern::Antisymmetric(a, b) => {
                self.check_slot(a)?;
                self.check_slot(b)?;
                if self.variance[a] != self.variance[b] {
                    return Err(TensorError::VarianceMismatch { a, b });
                }
                let swapped = self.swap_slots(a, b)?;
                let sign = if matches!(pattern, Pattern::Symmetric(..)) { -1.0 } else { 1.0 };
                // t - sym(t) = (t - t^T)/2, t - antisym(t) = (t + t^T)/2
                Ok(self.zip_with(&swapped, |x, y| 0.5 * (x + sign * y)).norm())
            }
        }
    }
}

fn increment(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Variance::{Lower, Upper};

    fn minkowski(n: usize) -> (DenseTensor, DenseTensor) {
        let g = DenseTensor::from_fn(n, &[Lower, Lower], |i| match (i[0], i[1]) {
            (0, 0) => -1.0,
            (a, b) if a == b => 1.0,
            _ => 0.0,
        });
        let gi = DenseTensor::from_data(n, &[Upper, Upper], g.data().to_vec()).unwrap();
        (g, gi)
    }

    fn random_metric(n: usize, seed: &[f64]) -> (DenseTensor, DenseTensor) {
        // diagonally dominant symmetric matrix with a leading negative entry
        let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let v = if i == j { (if i == 0 { -3.0 } else { 3.0 }) + seed[k % seed.len()] } else { 0.3 * seed[k % seed.len()] };
                m[(i, j)] = v;
                m[(j, i)] = v;
                k += 1;
            }
        }
        let inv = m.clone().try_inverse().unwrap();
        let g = DenseTensor::from_fn(n, &[Lower, Lower], |i| m[(i[0], i[1])]);
        let gi = DenseTensor::from_fn(n, &[Upper, Upper], |i| inv[(i[0], i[1])]);
        (g, gi)
    }

    #[test]
    fn trace_of_identity() {
        let d = DenseTensor::kronecker(4);
        assert_eq!(d.contract(0, 1, None).unwrap().value(), 4.0);
    }

    #[test]
    fn metric_trace_is_dimension() {
        let (g, gi) = minkowski(4);
        assert_eq!(g.contract(0, 1, Some(&gi)).unwrap().value(), 4.0);
    }

    #[test]
    fn lowering_timelike_vector_flips_sign() {
        let (g, _) = minkowski(4);
        let v = DenseTensor::from_data(4, &[Upper], vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let lowered = v.raise_lower(0, &g).unwrap();
        assert_eq!(lowered.variance(), &[Lower]);
        assert_eq!(lowered.data(), &[-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn contraction_errors() {
        let (g, gi) = minkowski(3);
        assert!(matches!(g.contract(0, 1, None), Err(TensorError::MissingMetric { .. })));
        assert!(matches!(g.contract(0, 1, Some(&g)), Err(TensorError::WrongMetric)));
        assert!(matches!(g.contract(0, 2, Some(&gi)), Err(TensorError::SlotOutOfRange { .. })));
        assert!(matches!(g.raise_lower(0, &g), Err(TensorError::WrongMetric)));
    }

    #[test]
    fn symmetric_defect_of_metric_is_zero() {
        let (g, _) = random_metric(4, &[0.1, -0.4, 0.7, 0.2]);
        assert_eq!(g.defect_norm(Pattern::Symmetric(0, 1)).unwrap(), 0.0);
        assert!(g.defect_norm(Pattern::Antisymmetric(0, 1)).unwrap() > 1.0);
    }

    #[test]
    fn defect_requires_equal_variance() {
        let d = DenseTensor::kronecker(3);
        assert!(matches!(
            d.defect_norm(Pattern::Symmetric(0, 1)),
            Err(TensorError::VarianceMismatch { .. })
        ));
    }

    #[test]
    fn l2_is_l1_with_first_index_raised() {
        // g(L2 U, V) = L1(U, V): lowering the raised slot gives back L1
        let (g, gi) = random_metric(4, &[0.3, 0.1, -0.2, 0.5, -0.7]);
        let l1 = DenseTensor::from_fn(4, &[Lower, Lower], |i| (i[0] as f64 + 1.0) * 0.3 - i[1] as f64 * 0.7);
        let l2 = l1.raise_lower(0, &gi).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                let mut lhs = 0.0;
                for a in 0..4 {
                    lhs += g.get(&[a, v]) * l2.get(&[a, u]);
                }
                assert!((lhs - l1.get(&[v, u])).abs() < 1e-12);
            }
        }
    }

    fn arb_tensor(rank: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-2.0f64..2.0, 4usize.pow(rank as u32))
    }

    proptest! {
        #[test]
        fn contraction_is_linear(x in arb_tensor(3), y in arb_tensor(3), a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let var = [Upper, Lower, Lower];
            let tx = DenseTensor::from_data(4, &var, x).unwrap();
            let ty = DenseTensor::from_data(4, &var, y).unwrap();
            let combo = tx.scale(a).add(&ty.scale(b)).unwrap();
            let lhs = combo.contract(0, 2, None).unwrap();
            let rhs = tx.contract(0, 2, None).unwrap().scale(a).add(&ty.contract(0, 2, None).unwrap().scale(b)).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-12 * (1.0 + rhs.max_abs()));
        }

        #[test]
        fn raise_then_lower_is_identity(x in arb_tensor(2), s in proptest::collection::vec(-0.5f64..0.5, 10)) {
            let (g, gi) = random_metric(4, &s);
            let t = DenseTensor::from_data(4, &[Lower, Lower], x).unwrap();
            let back = t.raise_lower(1, &gi).unwrap().raise_lower(1, &g).unwrap();
            prop_assert!(back.sub(&t).unwrap().max_abs() <= 1e-12 * (1.0 + t.max_abs()));
        }

        #[test]
        fn symmetric_defect_detects_asymmetry(x in arb_tensor(2), eps in 1e-6f64..1.0) {
            let t = DenseTensor::from_data(4, &[Lower, Lower], x).unwrap();
            let sym = t.add(&t.permute(&[1, 0]).unwrap()).unwrap().scale(0.5);
            prop_assert_eq!(sym.defect_norm(Pattern::Symmetric(0, 1)).unwrap(), 0.0);
            let mut perturbed = sym.clone();
            perturbed.set(&[0, 1], sym.get(&[0, 1]) + eps);
            let d = perturbed.defect_norm(Pattern::Symmetric(0, 1)).unwrap();
            prop_assert!((d - eps / 2f64.sqrt()).abs() <= 1e-12);
        }
    }
}
