//! Concrete `U(L)`-modules whose vectors are sparse polynomials, the
//! representation check, and replayable certificates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{bracket, FreeElement, Generator};
use crate::poly::{Signature, SparsePoly};

/// A `U(L)`-module realized on a polynomial (or Laurent polynomial) space.
pub trait LModule {
    /// Variables of the vector space.
    fn signature(&self) -> Signature;

    fn act(&self, g: Generator, v: &SparsePoly) -> Result<SparsePoly>;

    fn name(&self) -> String;

    /// Applies a word, rightmost letter first.
    fn act_word(&self, word: &[Generator], v: &SparsePoly) -> Result<SparsePoly> {
        let mut out = v.clone();
        for g in word.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.act(*g, &out)?;
        }
        Ok(out)
    }

    fn act_free(&self, u: &FreeElement, v: &SparsePoly) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(&self.signature());
        for (w, c) in u.terms() {
            out.add_scaled(&self.act_word(w, v)?, c);
        }
        Ok(out)
    }

    fn check_vector(&self, v: &SparsePoly) -> Result<()> {
        let sig = self.signature();
        if v.vars()[..] != sig[..] {
            return Err(Error::VariableMismatch(format!(
                "vector over {:?} given to module {} over {:?}",
                v.vars().iter().map(|x| &x.name).collect::<Vec<_>>(),
                self.name(),
                sig.iter().map(|x| &x.name).collect::<Vec<_>>()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomViolation {
    pub x: Generator,
    pub y: Generator,
    pub vector: String,
    /// `x(y v) - y(x v) - [x,y] v`.
    pub defect: String,
}

/// Checks `x(yv) - y(xv) = [x,y]v` for all generator pairs with indices in
/// `[-window, window]` and all sample vectors.
pub fn module_axiom_check(m: &dyn LModule, window: i64, samples: &[SparsePoly]) -> Result<Vec<AxiomViolation>> {
    let gens = Generator::window(window);
    let mut out = Vec::new();
    for v in samples {
        m.check_vector(v)?;
        let once: Vec<SparsePoly> = gens.iter().map(|g| m.act(*g, v)).collect::<Result<_>>()?;
        let twice: Vec<Vec<SparsePoly>> = gens
            .iter()
            .map(|x| once.iter().map(|w| m.act(*x, w)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let lhs = &twice[i][j] - &twice[j][i];
                let rhs = m.act_free(&FreeElement::from_lie(&bracket(gens[i], gens[j])), v)?;
                let defect = &lhs - &rhs;
                if !defect.is_zero() {
                    out.push(AxiomViolation {
                        x: gens[i],
                        y: gens[j],
                        vector: v.to_string(),
                        defect: defect.to_string(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All monomials with exponents bounded by `max_degree` in absolute value
/// and total absolute degree at most `max_degree`.
pub fn monomial_basis(sig: &Signature, max_degree: i64) -> Vec<SparsePoly> {
    let mut out = Vec::new();
    let mut exps = vec![0i64; sig.len()];
    fn rec(sig: &Signature, i: usize, budget: i64, exps: &mut Vec<i64>, out: &mut Vec<SparsePoly>) {
        if i == sig.len() {
            out.push(SparsePoly::monomial(sig, exps.clone(), num_traits::One::one()));
            return;
        }
        let lo = if sig[i].laurent { -budget } else { 0 };
        for e in lo..=budget {
            exps[i] = e;
            rec(sig, i + 1, budget - e.abs(), exps, out);
        }
        exps[i] = 0;
    }
    rec(sig, 0, max_degree, &mut exps, &mut out);
    out
}

/// One step of a certificate: `after = op · (previous vector)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertStep {
    pub label: String,
    pub op: FreeElement,
    pub after: SparsePoly,
}

/// A chain of `U(L)` elements taking `start` to `result`, checkable by
/// recomputing every step with the module action.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    pub start: SparsePoly,
    pub steps: Vec<CertStep>,
    pub result: SparsePoly,
}

impl Certificate {
    pub fn new(start: SparsePoly) -> Self {
        Certificate { result: start.clone(), start, steps: Vec::new() }
    }

    /// Applies `op` with the module action and records the step.
    pub fn push(&mut self, m: &dyn LModule, label: impl Into<String>, op: FreeElement) -> Result<&SparsePoly> {
        let after = m.act_free(&op, &self.result)?;
        self.result = after.clone();
        self.steps.push(CertStep { label: label.into(), op, after });
        Ok(&self.result)
    }

    /// Appends all steps of `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: Certificate) {
        debug_assert_eq!(other.start, self.result);
        self.steps.extend(other.steps);
        self.result = other.result;
    }

    /// The product of all step operators, rightmost applied first.
    pub fn combined_op(&self) -> FreeElement {
        self.steps.iter().fold(FreeElement::one(), |acc, s| s.op.mul(&acc))
    }

    /// Recomputes every step; fails at the first mismatch.
    pub fn replay(&self, m: &dyn LModule) -> Result<()> {
        m.check_vector(&self.start)?;
        let mut cur = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let next = m.act_free(&step.op, &cur)?;
            if next != step.after {
                return Err(Error::Replay {
                    step: i,
                    detail: format!("{}: expected {}, recomputed {}", step.label, step.after, next),
                });
            }
            cur = next;
        }
        if cur != self.result {
            return Err(Error::Replay {
                step: self.steps.len(),
                detail: format!("final vector {} differs from claimed result {}", cur, self.result),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{signature, Var};
    use crate::scalar::int;

    /// The trivial module on `C`: every generator acts as zero.
    struct Trivial(Signature);

    impl LModule for Trivial {
        fn signature(&self) -> Signature {
            self.0.clone()
        }
        fn act(&self, _g: Generator, v: &SparsePoly) -> Result<SparsePoly> {
            Ok(SparsePoly::zero(v.vars()))
        }
        fn name(&self) -> String {
            "trivial".into()
        }
    }

    /// Not a module: L_n acts by multiplication by n.
    struct Broken(Signature);

    impl LModule for Broken {
        fn signature(&self) -> Signature {
            self.0.clone()
        }
        fn act(&self, g: Generator, v: &SparsePoly) -> Result<SparsePoly> {
            Ok(match g.family {
                crate::lie::Family::L => v.scale(&int(g.index)),
                _ => SparsePoly::zero(v.vars()),
            })
        }
        fn name(&self) -> String {
            "broken".into()
        }
    }

    #[test]
    fn axiom_check_detects_non_modules() {
        let sig = signature(vec![]);
        let one = SparsePoly::one(&sig);
        assert!(module_axiom_check(&Trivial(sig.clone()), 1, std::slice::from_ref(&one)).unwrap().is_empty());
        let v = module_axiom_check(&Broken(sig), 1, &[one]).unwrap();
        // [L_m, L_n] = (n-m) L_{m+n} acts as (n-m)(m+n), commutator of scalars is 0
        assert!(v.iter().any(|x| x.x == Generator::l(-1) && x.y == Generator::l(0)));
    }

    #[test]
    fn monomial_basis_counts() {
        let p = signature(vec![Var::poly("s"), Var::poly("t")]);
        assert_eq!(monomial_basis(&p, 2).len(), 6);
        let l = signature(vec![Var::laurent("x0"), Var::laurent("x1")]);
        assert_eq!(monomial_basis(&l, 1).len(), 5);
        assert_eq!(monomial_basis(&l, 2).len(), 13);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let sig = signature(vec![Var::poly("s")]);
        let m = Trivial(sig.clone());
        let mut c = Certificate::new(SparsePoly::var(&sig, 0));
        c.push(&m, "kill", FreeElement::generator(Generator::a(0))).unwrap();
        assert!(c.replay(&m).is_ok());
        c.steps[0].after = SparsePoly::one(&sig);
        assert!(matches!(c.replay(&m), Err(Error::Replay { step: 0, .. })));
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
