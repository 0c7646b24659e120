//! Brute-force oracles: truncated submodule closure, naive word rewriting
//! and cofactor determinants.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{bracket, FreeElement, Generator, UEnvElement, Word};
use crate::linalg::SpanBuilder;
use crate::module::{monomial_basis, LModule};
use crate::poly::{Exponents, Signature, SparsePoly};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Bound on `Σ |e_i|` of kept monomials.
    pub max_total_degree: u32,
    /// Generators `x_n` with `n ∈ [-window, window]`.
    pub generator_window: u32,
    /// Maximum number of closure rounds.
    pub max_steps: u32,
}

impl TruncationPolicy {
    pub fn new(max_total_degree: u32, generator_window: u32, max_steps: u32) -> Result<Self> {
        if max_total_degree == 0 || generator_window == 0 || max_steps == 0 {
            return Err(Error::InvalidSpec("truncation policy fields must be positive".into()));
        }
        Ok(TruncationPolicy { max_total_degree, generator_window, max_steps })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_total_degree: 4, generator_window: 1, max_steps: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ClosureVerdict {
    /// The closure spans every monomial inside the truncation.
    FillsTruncation,
    /// A proper fixpoint was reached. With `exact` (no image was
    /// projected) the span is invariant under the windowed generators.
    ProperAtTruncation { exact: bool },
    /// `max_steps` rounds without reaching a fixpoint.
    Inconclusive { overflow: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub start: SparsePoly,
    pub reached: usize,
    pub ambient: usize,
    pub rounds: u32,
    /// Number of images that had terms outside the truncation.
    pub overflow: usize,
    pub policy: TruncationPolicy,
    pub verdict: ClosureVerdict,
}

fn within(e: &Exponents, max: i64) -> bool {
    e.iter().map(|x| x.abs()).sum::<i64>() <= max
}

/// Keeps the terms inside the truncation; the flag reports dropped terms.
fn project(v: &SparsePoly, max: i64) -> (SparsePoly, bool) {
    let kept = SparsePoly::from_terms(v.vars(), v.terms().filter(|(e, _)| within(e, max)).map(|(e, c)| (e.clone(), c.clone())));
    let dropped = kept.len() != v.len();
    (kept, dropped)
}

/// Closure of `span{v}` under a set of linear operators, projected to the
/// truncation after every application.
pub fn closure_with_ops(
    sig: &Signature,
    ops: &[&dyn Fn(&SparsePoly) -> Result<SparsePoly>],
    v: &SparsePoly,
    policy: TruncationPolicy,
) -> Result<ClosureReport> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let max = policy.max_total_degree as i64;
    if !v.terms().all(|(e, _)| within(e, max)) {
        return Err(Error::InvalidSpec(format!("start vector {v} exceeds total degree {max}")));
    }
    let ambient = monomial_basis(sig, max).len();
    let mut span: SpanBuilder<Exponents> = SpanBuilder::new();
    span.insert_poly(v);
    let mut frontier = vec![v.clone()];
    let (mut overflow, mut rounds) = (0, 0);
    let mut fixpoint = false;
    while rounds < policy.max_steps {
        rounds += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for op in ops {
                let (img, dropped) = project(&op(w)?, max);
                overflow += dropped as usize;
                if !img.is_zero() && span.insert_poly(&img) {
                    next.push(img);
                }
            }
        }
        if next.is_empty() || span.dim() == ambient {
            fixpoint = next.is_empty();
            frontier = next;
            break;
        }
        frontier = next;
    }
    let reached = span.dim();
    let verdict = if reached == ambient {
        ClosureVerdict::FillsTruncation
    } else if fixpoint || frontier.is_empty() {
        ClosureVerdict::ProperAtTruncation { exact: overflow == 0 }
    } else {
        ClosureVerdict::Inconclusive { overflow }
    };
    Ok(ClosureReport { start: v.clone(), reached, ambient, rounds, overflow, policy, verdict })
}

/// Closure of `span{v}` under the generators in the policy window.
pub fn truncated_closure(m: &dyn LModule, v: &SparsePoly, policy: TruncationPolicy) -> Result<ClosureReport> {
    m.check_vector(v)?;
    let gens = Generator::window(policy.generator_window as i64);
    let closures: Vec<Box<dyn Fn(&SparsePoly) -> Result<SparsePoly> + '_>> =
        gens.iter().map(|&g| Box::new(move |w: &SparsePoly| m.act(g, w)) as Box<dyn Fn(&SparsePoly) -> Result<SparsePoly>>).collect();
    let ops: Vec<&dyn Fn(&SparsePoly) -> Result<SparsePoly>> = closures.iter().map(|b| b.as_ref()).collect();
    closure_with_ops(&m.signature(), &ops, v, policy)
}

/// PBW normal form by naive recursion: swap the last descent, recurse on
/// the swapped word and on each bracket term. Exponential; only for
/// checking the straightening algorithm.
pub fn free_word_oracle(word: &[Generator]) -> UEnvElement {
    fn rec(w: &Word, c: &Scalar, out: &mut FreeElement) {
        let Some(i) = w.windows(2).rposition(|p| p[0] > p[1]) else {
            out.add_term(w.clone(), c.clone());
            return;
        };
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        rec(&swapped, c, out);
        for (z, k) in bracket(w[i], w[i + 1]).terms() {
            let mut shorter = w[..i].to_vec();
            shorter.push(*z);
            shorter.extend_from_slice(&w[i + 2..]);
            rec(&shorter, &(c * k), out);
        }
    }
    let mut out = FreeElement::zero();
    rec(&word.to_vec(), &Scalar::one(), &mut out);
    UEnvElement::from_normal(out).expect("recursion ends at sorted words")
}

/// Determinant by cofactor expansion along the first row.
pub fn naive_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut out = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * naive_det(&minor);
        if j % 2 == 0 {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Coordinate, FModule, RModule, UbModule};
    use crate::lie::pbw_normalize;
    use crate::omega::{OmegaModule, OmegaParams};
    use crate::poly::{signature, Var};
    use crate::scalar::int;
    use Generator as G;

    #[test]
    fn oracle_examples() {
        let e = free_word_oracle(&[G::b(0), G::a(0)]);
        let mut want = FreeElement::word(vec![G::a(0), G::b(0)], int(1));
        want.add_term(vec![G::c(0)], int(-1));
        assert_eq!(e.as_free(), &want);
        let w = [G::d(0), G::a(0), G::b(0)];
        assert_eq!(free_word_oracle(&w), pbw_normalize(&w));
        assert_eq!(free_word_oracle(&[G::l(3)]), UEnvElement::generator(G::l(3)));
    }

    #[test]
    fn naive_det_examples() {
        assert_eq!(naive_det(&[vec![int(1), int(1)], vec![int(2), int(3)]]), int(1));
        let id: Vec<Vec<Scalar>> = (0..4).map(|i| (0..4).map(|j| int((i == j) as i64)).collect()).collect();
        assert_eq!(naive_det(&id), int(1));
        assert_eq!(naive_det(&[vec![int(1), int(2)], vec![int(1), int(2)]]), int(0));
    }

    #[test]
    fn closure_verdicts() {
        let om = OmegaModule::new(OmegaParams::new(int(1), int(2), int(0), int(3), crate::poly::SparsePoly::parse(&crate::hom::t_signature(), "t").unwrap()).unwrap());
        let r = truncated_closure(&om, &om.one(), TruncationPolicy::new(3, 1, 10).unwrap()).unwrap();
        assert_eq!(r.verdict, ClosureVerdict::FillsTruncation);

        // β w + β n + ε = 0 at n = 1
        let f = FModule::new(int(0), int(1), RModule::split(Coordinate::Weight(int(0)), int(2)).unwrap(), UbModule::OneDim(int(-3))).unwrap();
        let r = truncated_closure(&f, &f.basis_vector(0, 1), TruncationPolicy::new(4, 1, 20).unwrap()).unwrap();
        assert!(matches!(r.verdict, ClosureVerdict::ProperAtTruncation { .. }), "{r:?}");
        assert!(truncated_closure(&om, &SparsePoly::zero(&om.signature()), TruncationPolicy::default()).is_err());
    }

    #[test]
    fn closure_with_custom_ops() {
        let sig = signature(vec![Var::poly("h")]);
        let h = |v: &SparsePoly| v.shift_exponent(0, 1);
        let e = |v: &SparsePoly| v.shift(0, &int(1));
        let ops: [&dyn Fn(&SparsePoly) -> Result<SparsePoly>; 2] = [&h, &e];
        let r = closure_with_ops(&sig, &ops, &SparsePoly::parse(&sig, "h^2 + 1").unwrap(), TruncationPolicy::new(3, 1, 10).unwrap()).unwrap();
        assert_eq!(r.verdict, ClosureVerdict::FillsTruncation);
    }
}
