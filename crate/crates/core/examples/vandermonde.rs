//! Generalized Vandermonde determinants: exact elimination against the
//! closed form.

use witt_diamond::vandermonde::{det_r, DetSpec};
use witt_diamond::scalar::int;

fn main() {
    let spec = DetSpec::new(vec![int(2), int(-1), int(3)], vec![2, 1, 2], 1).unwrap();
    for row in spec.matrix() {
        println!("  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
    }
    let r = det_r(&spec).unwrap();
    println!("det = {}, closed form = {}", r.computed, r.closed_form);

    let mut checked = 0;
    for s in 1..=3 {
        for r in 0..=2 {
            let spec = DetSpec::new(vec![int(1), int(5)], vec![s, 4 - s], r).unwrap();
            let res = det_r(&spec).unwrap();
            assert_eq!(res.computed, res.closed_form);
            checked += 1;
        }
    }
    println!("{checked} more specs agree");
}
