//! The command-line checks, each producing a [`Report`].

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::{epsilon_simplicity, EpsilonVerdict, UbModule};
use crate::hom::{image_witnesses, surjectivity_witnesses, verify_hom, GeneratorMap, PhiAB, PhiABGG, Witness};
use crate::lie::{bracket, jacobi_residual, Generator};
use crate::module::{module_axiom_check, monomial_basis, Certificate, LModule};
use crate::omega::{classify_rank1, omega_reduce_to_one, uh_rank, Rank1ActionData, Rank1Verdict};
use crate::oracle::{naive_det, truncated_closure, ClosureVerdict, TruncationPolicy};
use crate::ops::Algebra;
use crate::poly::SparsePoly;
use crate::report::Report;
use crate::scalar::{self, Scalar};
use crate::spec::ModuleSpec;
use crate::tensor::{iso_check, r_g, simplicity_decision, tensor_reduce_to_bottom, IsoVerdict, SimplicityDecision};
use crate::vandermonde::{det_r, DetSpec};

/// Antisymmetry and the Jacobi identity on all generators with indices in
/// `[-window, window]`.
pub fn verify_brackets(window: i64) -> Report {
    let gens = Generator::window(window);
    let mut report = Report::new("verify-brackets", None);
    let mut anti = Vec::new();
    for &x in &gens {
        for &y in &gens {
            if !bracket(x, y).add(&bracket(y, x)).is_zero() {
                anti.push(format!("[{x},{y}]"));
            }
        }
    }
    report.push(
        "antisymmetry",
        anti.is_empty(),
        json!({"summary": format!("{} pairs, {} violations", gens.len() * gens.len(), anti.len()), "violations": anti}),
    );
    let mut jac = Vec::new();
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                if !jacobi_residual(x, y, z).is_zero() {
                    jac.push(format!("({x},{y},{z})"));
                }
            }
        }
    }
    let n = gens.len().pow(3);
    report.push("jacobi", jac.is_empty(), json!({"summary": format!("{n} triples, {} violations", jac.len()), "violations": jac}));
    report
}

fn hom_checks<M: GeneratorMap>(report: &mut Report, name: &str, map: &M, window: i64, witnesses: &[Witness<M::Target>])
where
    M::Target: Algebra,
{
    let v = verify_hom(map, window);
    let shown: Vec<_> = v.iter().take(20).collect();
    report.push(
        &format!("{name}: homomorphism"),
        v.is_empty(),
        json!({"summary": format!("window {window}: {} violations", v.len()), "violations": shown}),
    );
    let failed: Vec<&str> = witnesses.iter().filter(|w| !w.holds(map)).map(|w| w.label).collect();
    let labels: Vec<String> = witnesses.iter().map(|w| format!("{} <- {}", w.label, w.preimage)).collect();
    report.push(
        &format!("{name}: preimages"),
        failed.is_empty(),
        json!({"summary": format!("{} of {} preimages map correctly", witnesses.len() - failed.len(), witnesses.len()), "witnesses": labels, "failed": failed}),
    );
}

pub fn verify_hom_ab(alpha: Scalar, beta: Scalar, window: i64) -> Result<Report> {
    let map = PhiAB::new(alpha, beta)?;
    let mut report = Report::new("verify-hom", None);
    hom_checks(&mut report, "phi_ab", &map, window, &image_witnesses(&map));
    Ok(report)
}

pub fn verify_hom_abgg(alpha: Scalar, beta: Scalar, gamma: Scalar, g: SparsePoly, window: i64) -> Result<Report> {
    let map = PhiABGG::new(alpha, beta, gamma, g)?;
    let mut report = Report::new("verify-hom", None);
    hom_checks(&mut report, "phi_abgg", &map, window, &surjectivity_witnesses(&map));
    Ok(report)
}

/// Applies a `U(L)` expression (text syntax, `Q` allowed) to a vector.
pub fn act(spec: &ModuleSpec, expr: &str, vector: &str) -> Result<Report> {
    let m = spec.module();
    let u = crate::hom::parse_uenv(expr)?;
    let v = SparsePoly::parse(&m.signature(), vector)?;
    let w = m.act_free(&u, &v)?;
    let mut report = Report::new("act", None);
    let mut detail = json!({"summary": format!("{expr} · ({v}) = {w}"), "module": m.name(), "vector": v.to_string(), "result": w.to_string()});
    if !v.is_zero() {
        let (e, c) = v.terms().next().expect("nonzero");
        let ratio = w.coeff(e) / c;
        if w == v.scale(&ratio) {
            detail["scalar"] = json!(scalar::format(&ratio));
        }
    }
    report.push("act", true, detail);
    Ok(report)
}

fn closure_detail(r: &crate::oracle::ClosureReport) -> Value {
    json!({
        "summary": format!("{:?}: reached {} of {} (overflow {})", r.verdict, r.reached, r.ambient, r.overflow),
        "start": r.start.to_string(),
        "reached": r.reached,
        "ambient": r.ambient,
        "rounds": r.rounds,
        "overflow": r.overflow,
        "policy": r.policy,
        "verdict": r.verdict,
    })
}

fn replays(m: &dyn LModule, certs: &[Certificate]) -> bool {
    certs.iter().all(|c| c.replay(m).is_ok())
}

/// Simplicity evidence for F, Ω and T specs.
pub fn simplicity<R: Rng>(spec: &ModuleSpec, policy: TruncationPolicy, samples: usize, seed: u64, rng: &mut R) -> Result<Report> {
    let mut report = Report::new("simplicity", Some(seed));
    match spec {
        ModuleSpec::F(f) => {
            let basis = monomial_basis(&f.signature(), 2);
            let v = module_axiom_check(f, 1, &basis)?;
            report.push(
                "representation",
                v.is_empty(),
                json!({"summary": format!("{} violations on {} vectors", v.len(), basis.len()), "violations": v.iter().take(10).collect::<Vec<_>>()}),
            );
            match epsilon_simplicity(f) {
                Ok(verdict) => {
                    let start = match &verdict {
                        EpsilonVerdict::Simple => f.basis_vector(0, 0),
                        EpsilonVerdict::NotSimple { generator, .. } => generator.clone(),
                    };
                    let r = truncated_closure(f, &start, policy)?;
                    let agree = matches!(
                        (&verdict, &r.verdict),
                        (EpsilonVerdict::Simple, ClosureVerdict::FillsTruncation)
                            | (EpsilonVerdict::NotSimple { .. }, ClosureVerdict::ProperAtTruncation { .. })
                    );
                    let v_text = match &verdict {
                        EpsilonVerdict::Simple => "Simple".to_string(),
                        EpsilonVerdict::NotSimple { witness, .. } => format!("NotSimple (witness n = {witness})"),
                    };
                    report.push("criterion", true, json!({"summary": v_text}));
                    let mut d = closure_detail(&r);
                    d["summary"] = json!(format!("criterion {v_text}; closure {}", d["summary"].as_str().unwrap_or_default()));
                    report.push("criterion agrees with closure", agree, d);
                }
                Err(Error::NotApplicable(why)) => {
                    let start = f.basis_vector(0, 0);
                    let r = truncated_closure(f, &start, policy)?;
                    let mut d = closure_detail(&r);
                    d["note"] = json!(format!("no closed-form criterion: {why}"));
                    if f.v == UbModule::Whittaker {
                        d["note"] = json!("V = C[h] is Whittaker-type; closure only");
                    }
                    report.push("closure", true, d);
                }
                Err(e) => return Err(e),
            }
        }
        ModuleSpec::Omega(o) => {
            let sig = o.signature();
            let mut certs = Vec::new();
            for _ in 0..samples {
                let v = crate::sample::vector_with_degrees(rng, &sig, &[3, 3]);
                certs.push(omega_reduce_to_one(o, &v)?);
            }
            let ok = replays(o, &certs) && certs.iter().all(|c| c.result == o.one());
            let n = certs.len();
            report.push("reduce to 1", ok, json!({"summary": format!("{n} random vectors reduced to 1, certificates replay")})).certificate = certs;
            let r = truncated_closure(o, &o.one(), policy)?;
            report.push("closure from 1", r.verdict == ClosureVerdict::FillsTruncation, closure_detail(&r));
        }
        ModuleSpec::T(t) => match simplicity_decision(t, samples, rng)? {
            SimplicityDecision::Simple { samples } => {
                let mut certs = Vec::new();
                let mut ok = true;
                for s in samples {
                    ok &= s.reduce.replay(t).is_ok() && s.generate.replay(t).is_ok() && s.generate.result == s.vector;
                    certs.push(s.reduce);
                    certs.push(s.generate);
                }
                report.push(
                    "simplicity",
                    ok,
                    json!({"summary": "Simple: sampled vectors reduce to 1 and are regenerated (evidence, not an exhaustive proof)", "verdict": "Simple"}),
                )
                .certificate = certs;
            }
            SimplicityDecision::NotSimple { witness } => {
                report.push(
                    "simplicity",
                    witness.escapes == 0,
                    json!({
                        "summary": format!("NotSimple, witness \"{}\": {} escapes over {} images", witness.description, witness.escapes, witness.images),
                        "verdict": "NotSimple",
                        "witness": witness,
                    }),
                );
            }
        },
    }
    Ok(report)
}

/// All ordered tuples of distinct entries of `alphas` of length `m`.
fn ordered_tuples(alphas: &[Scalar], m: usize) -> Vec<Vec<Scalar>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in ordered_tuples(alphas, m - 1) {
        for a in alphas {
            if !t.contains(a) {
                let mut u = t.clone();
                u.push(a.clone());
                out.push(u);
            }
        }
    }
    out
}

fn size_tuples(max_s: u32, m: usize) -> Vec<Vec<u32>> {
    (0..m).fold(vec![vec![]], |acc, _| acc.into_iter().flat_map(|t| (1..=max_s).map(move |s| [t.clone(), vec![s]].concat())).collect())
}

/// Every determinant spec with `m ≤ max_m`, `s_j ≤ max_s`, `r ≤ max_r`
/// and ordered distinct `α`'s from `alphas`; naive determinants up to size
/// `naive_up_to`.
pub fn det_sweep(alphas: &[Scalar], max_m: usize, max_s: u32, max_r: u32, naive_up_to: usize) -> Result<(usize, usize, Vec<DetSpec>)> {
    let (mut count, mut naive, mut bad) = (0, 0, Vec::new());
    for m in 1..=max_m {
        for a in ordered_tuples(alphas, m) {
            for s in size_tuples(max_s, m) {
                for r in 0..=max_r {
                    let spec = DetSpec::new(a.clone(), s.clone(), r)?;
                    let res = det_r(&spec)?;
                    count += 1;
                    let mut ok = res.computed == res.closed_form;
                    if spec.size() <= naive_up_to {
                        naive += 1;
                        ok &= naive_det(&spec.matrix()) == res.computed;
                    }
                    if !ok {
                        bad.push(spec);
                    }
                }
            }
        }
    }
    Ok((count, naive, bad))
}

pub fn det_lemma(alphas: &[Scalar], max_m: usize, max_s: u32, max_r: u32) -> Result<Report> {
    let (count, naive, bad) = det_sweep(alphas, max_m, max_s, max_r, 6)?;
    let mut report = Report::new("det-lemma", None);
    report.push(
        "determinant = closed form",
        bad.is_empty(),
        json!({
            "summary": if bad.is_empty() { format!("all {count} specs: determinant = closed form ({naive} also by cofactor expansion)") } else { format!("{} of {count} specs disagree", bad.len()) },
            "specs": count,
            "cofactor_checked": naive,
            "failures": bad,
        }),
    );
    Ok(report)
}

pub fn rank(spec: &ModuleSpec, vector: Option<&str>) -> Result<Report> {
    let mut report = Report::new("rank", None);
    match spec {
        ModuleSpec::Omega(o) => {
            let n = o.params.deg_g().ok_or_else(|| Error::Unsupported("U(H)-rank requires g != 0".into()))?;
            let r = uh_rank(o, 3 * (n + 1), 3)?;
            let ok = replays(o, &r.certificates) && r.independence.nullity == 0 && r.rank == n as usize + 1;
            let exprs: Vec<Value> = r
                .expressions
                .iter()
                .map(|e| json!({"k": e.k, "coefficients": e.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>()}))
                .collect();
            report.push(
                "U(H)-rank",
                ok,
                json!({
                    "summary": format!("rank {} = deg g + 1; t^k generated for k <= {}; independence nullity {}", r.rank, 3 * (n + 1), r.independence.nullity),
                    "rank": r.rank,
                    "expressions": exprs,
                    "independence": r.independence,
                    "note": "generation uses g_N t^{N+1+j} = (beta d0 - beta j - gamma) t^j - sum_{k<N} g_k t^{k+1+j}",
                }),
            )
            .certificate = r.certificates;
        }
        ModuleSpec::T(t) => {
            let g = match vector {
                Some(text) => SparsePoly::parse(&t.signature(), text)?,
                None => t.one(),
            };
            let r = r_g(t, &g)?;
            let s_free = crate::tensor::is_s_free(t, &g);
            let m = t.m();
            let ok = r > m && ((r == m + 1) == s_free);
            report.push(
                "R_g",
                ok,
                json!({"summary": format!("R_g = {r} for g = {g} (m = {m}, g free of s: {s_free})"), "r_g": r, "m": m}),
            );
        }
        ModuleSpec::F(_) => return Err(Error::NotApplicable("rank is defined for Omega and T specs".into())),
    }
    Ok(report)
}

pub fn classify(data: &Rank1ActionData) -> Result<Report> {
    let mut report = Report::new("classify", None);
    match classify_rank1(data) {
        Ok(Rank1Verdict::Omega(p)) => {
            report.push("classify", true, json!({"summary": format!("isomorphic to {p}"), "verdict": "Omega", "parameters": crate::spec::omega_json(&p)}));
        }
        Ok(Rank1Verdict::Degenerate { submodule }) => {
            report.push("classify", true, json!({"summary": format!("Degenerate: proper submodule {submodule}"), "verdict": "Degenerate", "submodule": submodule}));
        }
        Err(Error::NotAModule { relation, detail }) => {
            report.push(
                "classify",
                false,
                json!({"summary": format!("not a module: {relation} fails"), "verdict": "NotAModule", "relation": relation, "detail": detail}),
            );
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

pub fn iso(left: &ModuleSpec, right: &ModuleSpec) -> Result<Report> {
    let as_t = |s: &ModuleSpec| -> Result<crate::tensor::TensorModule> {
        match s {
            ModuleSpec::T(t) => Ok(t.clone()),
            ModuleSpec::Omega(o) => crate::tensor::TensorModule::new(vec![o.params.clone()]),
            ModuleSpec::F(_) => Err(Error::NotApplicable("isomorphism test is defined for Omega and T specs".into())),
        }
    };
    let (a, b) = (as_t(left)?, as_t(right)?);
    let mut report = Report::new("iso", None);
    let forms = json!([crate::tensor::canonical_form(&a), crate::tensor::canonical_form(&b)]);
    match iso_check(&a, &b)? {
        IsoVerdict::Isomorphic { permutation } => {
            report.push(
                "iso",
                true,
                json!({"summary": format!("Isomorphic, factor permutation {permutation:?}"), "verdict": "Isomorphic", "permutation": permutation, "canonical_forms": forms}),
            );
        }
        IsoVerdict::NotIsomorphic { invariant, detail } => {
            report.push(
                "iso",
                true,
                json!({"summary": format!("NotIsomorphic: {invariant} differs ({detail})"), "verdict": "NotIsomorphic", "invariant": invariant, "canonical_forms": forms}),
            );
        }
    }
    Ok(report)
}

pub fn replay(spec: &ModuleSpec, certs: &[Certificate]) -> Report {
    let mut report = Report::new("replay", None);
    for (i, c) in certs.iter().enumerate() {
        match c.replay(spec.module()) {
            Ok(()) => report.push(&format!("certificate {i}"), true, json!(format!("{} steps reproduce {}", c.steps.len(), c.result))),
            Err(e) => report.push(&format!("certificate {i}"), false, json!(e.to_string())),
        };
    }
    report
}

/// Reduction certificates for the CLI: Ω to 1, T to `1^{⊗m}`.
pub fn reduce(spec: &ModuleSpec, vector: &str) -> Result<Certificate> {
    let m = spec.module();
    let v = SparsePoly::parse(&m.signature(), vector)?;
    match spec {
        ModuleSpec::Omega(o) => omega_reduce_to_one(o, &v),
        ModuleSpec::T(t) => tensor_reduce_to_bottom(t, &v),
        ModuleSpec::F(_) => Err(Error::NotApplicable("reduction certificates exist for Omega and T specs".into())),
    }
}

pub fn default_alphas() -> Vec<Scalar> {
    [1, 2, 3, 5, 7, -2].iter().map(|&a| scalar::int(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use rand::SeedableRng;

    #[test]
    fn brackets_pass_on_small_window() {
        assert!(verify_brackets(1).all_pass());
    }

    #[test]
    fn small_det_sweep() {
        let (count, naive, bad) = det_sweep(&[int(1), int(2), int(-2)], 2, 2, 1, 6).unwrap();
        assert_eq!(count, (3 * 2 + 6 * 4) * 2);
        assert_eq!(naive, count);
        assert!(bad.is_empty());
    }

    #[test]
    fn epsilon_report() {
        let spec = ModuleSpec::from_str(
            r#"{"family":"F","alpha":"0","beta":"1","P":{"kind":"split","P0":{"kind":"M","w":"0"},"w":"2"},"V":{"kind":"C_eps","eps":"-3"}}"#,
        )
        .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = simplicity(&spec, TruncationPolicy::new(4, 1, 20).unwrap(), 2, 1, &mut rng).unwrap();
        assert!(r.all_pass(), "{}", r.summary());
        assert!(r.summary().contains("NotSimple (witness n = 1)"));
    }
}
