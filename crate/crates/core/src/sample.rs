//! Seeded random scalars, parameters and vectors for sweeps.

use num_traits::Zero;
use rand::Rng;

use crate::hom::t_signature;
use crate::module::monomial_basis;
use crate::omega::OmegaParams;
use crate::poly::{Signature, SparsePoly};
use crate::scalar::{self, Scalar};

/// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn rational<R: Rng>(rng: &mut R) -> Scalar {
    scalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let x = rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A nonzero combination of monomials of total degree at most `max_degree`
/// (each exponent also bounded by `max_degree`), with about half the
/// monomials present.
pub fn vector<R: Rng>(rng: &mut R, sig: &Signature, max_degree: i64) -> SparsePoly {
    let basis = monomial_basis(sig, max_degree);
    loop {
        let mut v = SparsePoly::zero(sig);
        for b in &basis {
            if rng.gen_bool(0.5) {
                v.add_scaled(b, &rational(rng));
            }
        }
        if !v.is_zero() {
            return v;
        }
    }
}

/// Vector with independent bounds on the degree of each variable.
pub fn vector_with_degrees<R: Rng>(rng: &mut R, sig: &Signature, max_degrees: &[i64]) -> SparsePoly {
    loop {
        let mut v = SparsePoly::zero(sig);
        let mut e = vec![0i64; sig.len()];
        loop {
            if rng.gen_bool(0.5) {
                v.add_term(e.clone(), rational(rng));
            }
            let mut i = 0;
            while i < e.len() && e[i] == max_degrees[i] {
                e[i] = 0;
                i += 1;
            }
            if i == e.len() {
                break;
            }
            e[i] += 1;
        }
        if !v.is_zero() {
            return v;
        }
    }
}

/// A polynomial in `t` of degree exactly `degree`.
pub fn t_poly<R: Rng>(rng: &mut R, degree: u32) -> SparsePoly {
    let mut coeffs: Vec<Scalar> = (0..degree).map(|_| rational(rng)).collect();
    coeffs.push(nonzero_rational(rng));
    SparsePoly::univariate(&t_signature(), 0, &coeffs)
}

pub fn omega_params<R: Rng>(rng: &mut R, deg_g: u32) -> OmegaParams {
    OmegaParams::new(rational(rng), nonzero_rational(rng), rational(rng), nonzero_rational(rng), t_poly(rng, deg_g))
        .expect("nonzero beta and lambda")
}
