//! Recognize a module that is free of rank one over C[L0, a0] from its
//! structure functions.

use witt_diamond::omega::{classify_rank1, read_off, OmegaModule, OmegaParams, Rank1Verdict};
use witt_diamond::spec::action_data_from_json;
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::{frac, int};

fn main() {
    let g = SparsePoly::parse(&signature(vec![Var::poly("t")]), "t + 1").unwrap();
    let p = OmegaParams::new(frac(1, 3), int(2), int(0), int(5), g).unwrap();
    let data = read_off(&OmegaModule::new(p)).unwrap();
    println!("read off: p = {}, B0 = {}, C0 = {}, D0 = {}", data.p, data.b0, data.c0, data.d0);
    match classify_rank1(&data).unwrap() {
        Rank1Verdict::Omega(p) => println!("  -> {p}"),
        other => println!("  -> {other:?}"),
    }

    let degenerate = serde_json::json!({"lambda": "2", "p": "1/2", "B0": "0", "C0": "0", "D0": "a0^2"});
    let data = action_data_from_json(&degenerate).unwrap();
    println!("C0 = 0 -> {:?}", classify_rank1(&data).unwrap());

    let inconsistent = serde_json::json!({"lambda": "2", "p": "a0", "B0": "1", "C0": "-1", "D0": "a0"});
    let data = action_data_from_json(&inconsistent).unwrap();
    match classify_rank1(&data) {
        Err(e) => println!("p = a0 -> {e}"),
        Ok(v) => println!("unexpected: {v:?}"),
    }
}
