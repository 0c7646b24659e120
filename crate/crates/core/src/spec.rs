//! JSON module specifications. Validation errors carry the JSON pointer of
//! the offending value.
//!
//! ```json
//! {"family": "F", "alpha": "1/2", "beta": "3",
//!  "P": {"kind": "M", "w": ["0", "1/2"]}, "V": {"kind": "C_eps", "eps": "0"}}
//! {"family": "Omega", "alpha": "1", "beta": "2", "gamma": "0", "lambda": "3", "g": [[1, "1"]]}
//! {"family": "T", "factors": [{...Omega fields...}, ...]}
//! ```
//!
//! `P` kinds: `{"kind": "M", "w": [w0, w1]}`, `{"kind": "Omega", "lambda": [l0, l1]}`,
//! `{"kind": "split", "P0": {"kind": "M", "w": w0} | {"kind": "Omega", "lambda": l0}, "w": w}`.
//! `V` kinds: `{"kind": "C_eps", "eps": e}`, `{"kind": "Whittaker"}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::{Coordinate, FModule, RModule, UbModule};
use crate::hom::t_signature;
use crate::module::LModule;
use crate::omega::{ub_signature, OmegaModule, OmegaParams, Rank1ActionData};
use crate::poly::{signature, SparsePoly, Var};
use crate::scalar::{self, Scalar};
use crate::tensor::TensorModule;

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    F(FModule),
    Omega(OmegaModule),
    T(TensorModule),
}

impl ModuleSpec {
    pub fn module(&self) -> &dyn LModule {
        match self {
            ModuleSpec::F(m) => m,
            ModuleSpec::Omega(m) => m,
            ModuleSpec::T(m) => m,
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let root = Node::root(value);
        match root.get("family")?.str()? {
            "F" => Ok(ModuleSpec::F(parse_f(&root)?)),
            "Omega" => Ok(ModuleSpec::Omega(OmegaModule::new(parse_omega(&root)?))),
            "T" => {
                let factors = root.get("factors")?;
                let items = factors.array()?;
                if items.is_empty() {
                    return Err(factors.error("at least one factor is required"));
                }
                let params = items.iter().map(parse_omega).collect::<Result<Vec<_>>>()?;
                Ok(ModuleSpec::T(TensorModule::new(params)?))
            }
            other => Err(root.child("family").error(&format!("unknown family {other:?} (expected F, Omega or T)"))),
        }
    }

    pub fn from_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema { pointer: String::new(), message: e.to_string() })?;
        Self::from_json(&value)
    }
}

pub fn omega_json(p: &OmegaParams) -> Value {
    let g: Vec<Value> = p.g.terms().map(|(e, c)| json!([e[0], scalar::format(c)])).collect();
    json!({
        "family": "Omega",
        "alpha": scalar::format(&p.alpha),
        "beta": scalar::format(&p.beta),
        "gamma": scalar::format(&p.gamma),
        "lambda": scalar::format(&p.lambda),
        "g": g,
    })
}

pub fn tensor_json(t: &TensorModule) -> Value {
    json!({"family": "T", "factors": t.factors.iter().map(omega_json).collect::<Vec<_>>()})
}

/// Action data for rank-one classification; polynomials use the text
/// syntax, `p` in `a0` and the others in `L0, a0`:
/// `{"lambda": "2", "p": "1/2", "B0": "a0^2", "C0": "-3", "D0": "a0^3/3"}`.
pub fn action_data_from_json(value: &Value) -> Result<Rank1ActionData> {
    let root = Node::root(value);
    let sig = ub_signature();
    let a_sig = signature(vec![Var::poly("a0")]);
    let poly = |key: &str, sig: &crate::poly::Signature| -> Result<SparsePoly> {
        let node = root.get(key)?;
        SparsePoly::parse(sig, node.str()?).map_err(|e| node.error(&e.to_string()))
    };
    let lambda = root.get("lambda")?.scalar()?;
    if num_traits::Zero::is_zero(&lambda) {
        return Err(root.child("lambda").error("lambda must be nonzero"));
    }
    Ok(Rank1ActionData { lambda, p: poly("p", &a_sig)?, b0: poly("B0", &sig)?, c0: poly("C0", &sig)?, d0: poly("D0", &sig)? })
}

pub fn action_data_json(d: &Rank1ActionData) -> Value {
    json!({
        "lambda": scalar::format(&d.lambda),
        "p": d.p.to_string(),
        "B0": d.b0.to_string(),
        "C0": d.c0.to_string(),
        "D0": d.d0.to_string(),
    })
}

struct Node<'a> {
    value: Option<&'a Value>,
    pointer: String,
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node { value: Some(value), pointer: String::new() }
    }

    fn error(&self, message: &str) -> Error {
        Error::Schema { pointer: if self.pointer.is_empty() { "/".into() } else { self.pointer.clone() }, message: message.into() }
    }

    fn child(&self, key: &str) -> Node<'a> {
        Node { value: self.value.and_then(|v| v.get(key)), pointer: format!("{}/{}", self.pointer, key.replace('~', "~0").replace('/', "~1")) }
    }

    fn get(&self, key: &str) -> Result<Node<'a>> {
        if !self.value.is_some_and(Value::is_object) {
            return Err(self.error("expected an object"));
        }
        let c = self.child(key);
        if c.value.is_none() {
            return Err(c.error("missing required field"));
        }
        Ok(c)
    }

    fn opt(&self, key: &str) -> Option<Node<'a>> {
        let c = self.child(key);
        c.value.is_some().then_some(c)
    }

    fn str(&self) -> Result<&'a str> {
        self.value.and_then(Value::as_str).ok_or_else(|| self.error("expected a string"))
    }

    fn scalar(&self) -> Result<Scalar> {
        let text = match self.value {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) if n.is_i64() => n.to_string(),
            _ => return Err(self.error("expected a rational as a string \"p/q\"")),
        };
        scalar::parse(&text).map_err(|e| self.error(&e.to_string()))
    }

    fn nonzero(&self) -> Result<Scalar> {
        let x = self.scalar()?;
        if num_traits::Zero::is_zero(&x) {
            return Err(self.error("must be nonzero"));
        }
        Ok(x)
    }

    fn array(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.and_then(Value::as_array).ok_or_else(|| self.error("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| Node { value: Some(v), pointer: format!("{}/{i}", self.pointer) }).collect())
    }

    fn pair(&self) -> Result<[Scalar; 2]> {
        let items = self.array()?;
        if items.len() != 2 {
            return Err(self.error("expected two entries"));
        }
        Ok([items[0].scalar()?, items[1].scalar()?])
    }
}

fn parse_omega(node: &Node) -> Result<OmegaParams> {
    if let Some(f) = node.opt("family") {
        if f.str()? != "Omega" {
            return Err(f.error("tensor factors must be Omega modules"));
        }
    }
    let g_node = node.get("g")?;
    let mut g = SparsePoly::zero(&t_signature());
    for term in g_node.array()? {
        let parts = term.array()?;
        if parts.len() != 2 {
            return Err(term.error("expected [degree, \"coefficient\"]"));
        }
        let k = parts[0].value.and_then(Value::as_u64).ok_or_else(|| parts[0].error("expected a nonnegative integer degree"))?;
        g.add_term(vec![k as i64], parts[1].scalar()?);
    }
    OmegaParams::new(
        node.get("alpha")?.scalar()?,
        node.get("beta")?.nonzero()?,
        node.get("gamma")?.scalar()?,
        node.get("lambda")?.nonzero()?,
        g,
    )
}

fn parse_f(root: &Node) -> Result<FModule> {
    let alpha = root.get("alpha")?.scalar()?;
    let beta = root.get("beta")?.nonzero()?;
    let p = root.get("P")?;
    let r = match p.get("kind")?.str()? {
        "M" => {
            let [w0, w1] = p.get("w")?.pair()?;
            RModule::weighted(w0, w1)
        }
        "Omega" => {
            let l = p.get("lambda")?;
            for item in l.array()? {
                item.nonzero()?;
            }
            let [l0, l1] = l.pair()?;
            RModule::shift(l0, l1)?
        }
        "split" => {
            let p0 = p.get("P0")?;
            let c = match p0.get("kind")?.str()? {
                "M" => Coordinate::Weight(p0.get("w")?.scalar()?),
                "Omega" => Coordinate::Shift(p0.get("lambda")?.nonzero()?),
                other => return Err(p0.child("kind").error(&format!("unknown P0 kind {other:?} (expected M or Omega)"))),
            };
            RModule::split(c, p.get("w")?.scalar()?)?
        }
        other => return Err(p.child("kind").error(&format!("unknown P kind {other:?} (expected M, Omega or split)"))),
    };
    let v = root.get("V")?;
    let ub = match v.get("kind")?.str()? {
        "C_eps" => UbModule::OneDim(v.get("eps")?.scalar()?),
        "Whittaker" => UbModule::Whittaker,
        other => return Err(v.child("kind").error(&format!("unknown V kind {other:?} (expected C_eps or Whittaker)"))),
    };
    FModule::new(alpha, beta, r, ub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn schema_pointer(text: &str) -> String {
        match ModuleSpec::from_str(text) {
            Err(Error::Schema { pointer, .. }) => pointer,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parses_all_families() {
        let f = ModuleSpec::from_str(r#"{"family":"F","alpha":"1/2","beta":"3","P":{"kind":"M","w":["0","1/2"]},"V":{"kind":"C_eps","eps":"0"}}"#)
            .unwrap();
        let ModuleSpec::F(f) = f else { panic!() };
        assert_eq!(f.beta(), &int(3));
        assert_eq!(f.p, RModule::weighted(int(0), frac(1, 2)));
        let o = ModuleSpec::from_str(r#"{"family":"Omega","alpha":"1","beta":"2","gamma":"0","lambda":"3","g":[[2,"1"],[0,"-1/2"]]}"#).unwrap();
        let ModuleSpec::Omega(o) = o else { panic!() };
        assert_eq!(o.params.g, SparsePoly::parse(&t_signature(), "t^2 - 1/2").unwrap());
        let back = ModuleSpec::from_json(&omega_json(&o.params)).unwrap();
        let ModuleSpec::Omega(b) = back else { panic!() };
        assert_eq!(b.params, o.params);
        let t = ModuleSpec::from_str(
            r#"{"family":"T","factors":[{"alpha":"1","beta":"2","gamma":"0","lambda":"3","g":[]},{"alpha":"1","beta":"2","gamma":"0","lambda":"4","g":[[0,"1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(t.module().signature().len(), 4);
        let s = ModuleSpec::from_str(
            r#"{"family":"F","alpha":"0","beta":"1","P":{"kind":"split","P0":{"kind":"Omega","lambda":"2"},"w":"1/3"},"V":{"kind":"Whittaker"}}"#,
        )
        .unwrap();
        assert_eq!(s.module().signature().len(), 3);
    }

    #[test]
    fn schema_errors_point_at_the_problem() {
        assert_eq!(schema_pointer(r#"{"family":"X"}"#), "/family");
        assert_eq!(schema_pointer(r#"{"family":"Omega","alpha":"1","beta":"0","gamma":"0","lambda":"3","g":[]}"#), "/beta");
        assert_eq!(schema_pointer(r#"{"family":"F","alpha":"1","beta":"1","P":{"kind":"M","w":["0"]},"V":{"kind":"C_eps","eps":"0"}}"#), "/P/w");
        assert_eq!(schema_pointer(r#"{"family":"T","factors":[{"alpha":"1","beta":"2","gamma":"0","lambda":"x","g":[]}]}"#), "/factors/0/lambda");
        assert_eq!(schema_pointer(r#"{"family":"Omega","alpha":"1","beta":"1","gamma":"0","lambda":"3","g":[[-1,"2"]]}"#), "/g/0/0");
        assert_eq!(schema_pointer("{"), "");
    }

    #[test]
    fn action_data_round_trip() {
        let o = OmegaModule::new(OmegaParams::new(frac(1, 2), int(3), int(0), int(2), SparsePoly::parse(&t_signature(), "t^2").unwrap()).unwrap());
        let d = crate::omega::read_off(&o).unwrap();
        assert_eq!(action_data_from_json(&action_data_json(&d)).unwrap(), d);
        let bad = json!({"lambda": "2", "p": "q", "B0": "0", "C0": "0", "D0": "0"});
        assert!(matches!(action_data_from_json(&bad), Err(Error::Schema { pointer, .. }) if pointer == "/p"));
    }
}
