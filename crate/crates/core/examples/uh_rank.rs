//! Omega modules are free of rank deg g + 1 over U(H), H spanned by L0 and d0.

use witt_diamond::omega::{recursion_sides, uh_rank, OmegaModule, OmegaParams};
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::scalar::int;

fn main() {
    let tsig = signature(vec![Var::poly("t")]);
    for g in ["1 + t", "t^2", "2t^3 + t"] {
        let p = OmegaParams::new(int(1), int(2), int(-1), int(3), SparsePoly::parse(&tsig, g).unwrap()).unwrap();
        let m = OmegaModule::new(p);
        let r = uh_rank(&m, 8, 3).unwrap();
        println!("g = {g}: rank {}, nullity {} over {} columns", r.rank, r.independence.nullity, r.independence.columns);
        for e in r.expressions.iter().take(r.rank + 2) {
            println!("  t^{} = {}", e.k, e.as_operator());
        }
        let (lhs, rhs) = recursion_sides(&m, 1).unwrap();
        println!("  recursion at j = 1 holds: {}", lhs == rhs);
    }
}
