//! JSON form of polynomials: `{"arity": d, "terms": [{"exp": [...], "coef": "a/b"}]}`
//! with terms in descending graded-lex order.

use serde::{Deserialize, Serialize};

use super::mpoly::{MPoly, Monomial};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

impl From<&MPoly<Rational>> for MPolyJson {
    fn from(p: &MPoly<Rational>) -> Self {
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| TermJson { exp: m.exps().to_vec(), coef: c.to_string() })
            .collect();
        MPolyJson { arity: p.arity(), terms }
    }
}

impl TryFrom<&MPolyJson> for MPoly<Rational> {
    type Error = Error;

    fn try_from(j: &MPolyJson) -> Result<Self> {
        let mut p = MPoly::zero(j.arity);
        for (k, t) in j.terms.iter().enumerate() {
            if t.exp.len() != j.arity {
                return Err(Error::Parse { offset: k, message: "exponent length differs from arity".into() });
            }
            let c = parse_rational(&t.coef)
                .ok_or_else(|| Error::Parse { offset: k, message: format!("bad coefficient '{}'", t.coef) })?;
            p.add_term(Monomial::new(t.exp.clone()), c);
        }
        Ok(p)
    }
}

/// Serializes a polynomial to its canonical JSON value.
pub fn mpoly_to_json(p: &MPoly<Rational>) -> serde_json::Value {
    serde_json::to_value(MPolyJson::from(p)).expect("plain data serializes")
}

pub fn mpoly_from_json(v: &serde_json::Value) -> Result<MPoly<Rational>> {
    let j: MPolyJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse { offset: 0, message: e.to_string() })?;
    MPoly::try_from(&j)
}

/// Univariate polynomials are serialized as their one-variable embedding.
pub fn upoly_to_json(p: &Poly<Rational>) -> serde_json::Value {
    mpoly_to_json(&MPoly::from_uni(p, 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse::parse_mpoly;

    #[test]
    fn canonical_order_and_round_trip() {
        let p = parse_mpoly("3 + x1*x2 - 1/2 x2^2 + x1^2").unwrap();
        let v = mpoly_to_json(&p);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"arity":2,"terms":[{"exp":[2,0],"coef":"1"},{"exp":[1,1],"coef":"1"},{"exp":[0,2],"coef":"-1/2"},{"exp":[0,0],"coef":"3"}]}"#
        );
        assert_eq!(mpoly_from_json(&v).unwrap(), p);
    }
}
