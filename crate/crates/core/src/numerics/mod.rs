//! Dense linear algebra shared by the encoders, built around one symmetric
//! eigensolver.

mod eigen;
mod matrix;
mod spectral;

pub use eigen::{sym_eig, SpectralDecomp, SYMMETRY_TOL};
pub use matrix::Matrix;
pub use spectral::{default_projector_tol, projectors, propagate, ProjectorSet, Propagator};

/// Binomial coefficient, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(26, 2), 325);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
