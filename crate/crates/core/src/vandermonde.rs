//! Generalized Vandermonde systems in the functions `n ↦ n^x λ^n`.
//!
//! Over consecutive integers `n` these functions are linearly independent
//! whenever the `λ`'s are distinct and nonzero; the closed form of the
//! determinant is [`closed_form`]. The reductions on `Ω`-modules and their
//! tensor products use [`dual_coefficients`] to isolate one coefficient
//! function from a window of generator actions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetSpec {
    #[serde(with = "scalar_list")]
    pub alphas: Vec<Scalar>,
    pub sizes: Vec<u32>,
    pub r: u32,
}

mod scalar_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(scalar::format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| scalar::parse(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl DetSpec {
    pub fn new(alphas: Vec<Scalar>, sizes: Vec<u32>, r: u32) -> Result<Self> {
        let spec = DetSpec { alphas, sizes, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.alphas.len() != self.sizes.len() {
            return Err(Error::InvalidSpec("need one size per alpha and at least one alpha".into()));
        }
        if self.sizes.contains(&0) {
            return Err(Error::InvalidSpec("block sizes must be at least 1".into()));
        }
        for (i, a) in self.alphas.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::InvalidSpec("alphas must be nonzero".into()));
            }
            if self.alphas[..i].contains(a) {
                return Err(Error::InvalidSpec(format!("repeated alpha {}", scalar::format(a))));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.sizes.iter().map(|&s| s as usize).sum()
    }

    /// Rows `n = r, …, r+s-1`; column block `j` holds `n^e α_j^n`,
    /// `e = 0..s_j`.
    pub fn matrix(&self) -> Matrix {
        let functions: Vec<(Scalar, u32)> = self
            .alphas
            .iter()
            .zip(&self.sizes)
            .flat_map(|(a, &s)| (0..s).map(move |e| (a.clone(), e)))
            .collect();
        let r = self.r as i64;
        (r..r + self.size() as i64).map(|n| functions.iter().map(|(a, e)| eval(a, *e, n)).collect()).collect()
    }
}

/// `n^x λ^n` (with `0^0 = 1`).
pub fn eval(lambda: &Scalar, x: u32, n: i64) -> Scalar {
    scalar::pow(&scalar::int(n), x as i64) * scalar::pow(lambda, n)
}

/// `m!! = m! (m-1)! ⋯ 1!`.
pub fn superfactorial(m: u32) -> Scalar {
    (1..=m).fold(Scalar::one(), |acc, k| acc * Scalar::from_integer(scalar::factorial(k)))
}

/// `∏_j (s_j - 1)!! α_j^{s_j(s_j+2r-1)/2} ∏_{i<j} (α_j - α_i)^{s_i s_j}`.
pub fn closed_form(spec: &DetSpec) -> Scalar {
    let r = spec.r as i64;
    let mut out = Scalar::one();
    for (j, (a, &s)) in spec.alphas.iter().zip(&spec.sizes).enumerate() {
        let s = s as i64;
        out *= superfactorial((s - 1) as u32);
        out *= scalar::pow(a, s * (s + 2 * r - 1) / 2);
        for (ai, &si) in spec.alphas[..j].iter().zip(&spec.sizes) {
            out *= scalar::pow(&(a - ai), si as i64 * s);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub computed: Scalar,
    pub closed_form: Scalar,
}

pub fn det_r(spec: &DetSpec) -> Result<DetResult> {
    spec.validate()?;
    Ok(DetResult { computed: linalg::determinant(&spec.matrix()), closed_form: closed_form(spec) })
}

/// Coefficients `κ_0, …, κ_{K-1}` with `Σ_i κ_i f(start + i) = 1` for
/// `f = functions[target]` and `= 0` for every other function, where the
/// functions are `n ↦ n^x λ^n` and `K = functions.len()`.
pub fn dual_coefficients(functions: &[(Scalar, u32)], start: i64, target: usize) -> Result<Vec<Scalar>> {
    let k = functions.len();
    let transposed: Matrix =
        functions.iter().map(|(l, x)| (0..k as i64).map(|i| eval(l, *x, start + i)).collect()).collect();
    let mut rhs = vec![Scalar::zero(); k];
    rhs[target] = Scalar::one();
    if linalg::rank(&transposed) < k {
        return Err(Error::NotApplicable("coefficient functions are linearly dependent (repeated lambda?)".into()));
    }
    let sol = linalg::solve(&transposed, &rhs).expect("invertible system is consistent");
    Ok(sol)
}

/// The function family `{n^x λ_k^n : x ≤ degrees[k]}` in a fixed order,
/// with a lookup for `(k, x)`.
#[derive(Clone, Debug)]
pub struct FunctionFamily {
    pub functions: Vec<(Scalar, u32)>,
    offsets: Vec<usize>,
}

impl FunctionFamily {
    pub fn new(lambdas: &[Scalar], degrees: &[u32]) -> Self {
        let mut functions = Vec::new();
        let mut offsets = Vec::new();
        for (l, &d) in lambdas.iter().zip(degrees) {
            offsets.push(functions.len());
            functions.extend((0..=d).map(|x| (l.clone(), x)));
        }
        FunctionFamily { functions, offsets }
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn index(&self, k: usize, x: u32) -> usize {
        self.offsets[k] + x as usize
    }

    pub fn dual(&self, k: usize, x: u32) -> Result<Vec<Scalar>> {
        dual_coefficients(&self.functions, 0, self.index(k, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn spec(alphas: &[i64], sizes: &[u32], r: u32) -> DetSpec {
        DetSpec::new(alphas.iter().map(|&a| int(a)).collect(), sizes.to_vec(), r).unwrap()
    }

    #[test]
    fn small_determinants() {
        let s = spec(&[2, 3], &[1, 1], 0);
        assert_eq!(s.matrix(), vec![vec![int(1), int(1)], vec![int(2), int(3)]]);
        assert_eq!(det_r(&s).unwrap(), DetResult { computed: int(1), closed_form: int(1) });

        let s = spec(&[2], &[2], 0);
        assert_eq!(s.matrix(), vec![vec![int(1), int(0)], vec![int(2), int(2)]]);
        assert_eq!(det_r(&s).unwrap().closed_form, int(2));

        let s = spec(&[5], &[1], 3);
        assert_eq!(det_r(&s).unwrap(), DetResult { computed: int(125), closed_form: int(125) });
    }

    #[test]
    fn superfactorials() {
        assert_eq!(superfactorial(0), int(1));
        assert_eq!(superfactorial(1), int(1));
        assert_eq!(superfactorial(3), int(12));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(DetSpec::new(vec![int(2), int(2)], vec![1, 1], 0), Err(Error::InvalidSpec(_))));
        assert!(DetSpec::new(vec![int(0)], vec![1], 0).is_err());
        assert!(DetSpec::new(vec![int(1)], vec![0], 0).is_err());
    }

    #[test]
    fn dual_coefficients_isolate_one_function() {
        let fam = FunctionFamily::new(&[int(2), int(-3)], &[1, 2]);
        for k in 0..2 {
            for x in 0..=[1, 2][k] {
                let kappa = fam.dual(k, x).unwrap();
                for (j, (l, y)) in fam.functions.iter().enumerate() {
                    let s: Scalar = kappa.iter().enumerate().map(|(i, c)| c * eval(l, *y, i as i64)).sum();
                    let want = if j == fam.index(k, x) { int(1) } else { int(0) };
                    assert_eq!(s, want);
                }
            }
        }
        let repeated = FunctionFamily::new(&[int(2), int(2)], &[0, 0]);
        assert!(matches!(repeated.dual(0, 0), Err(Error::NotApplicable(_))));
    }
}
