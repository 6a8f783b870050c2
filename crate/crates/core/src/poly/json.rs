//! JSON form of polynomials:
//! `{"terms":[{"c":"<int or num/den>","m":[[varIndex,exp],...]},...]}` with
//! `varIndex = (row-1)*cols + (col-1)`.

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub m: Vec<[u64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

impl<F: Field> Polynomial<F> {
    /// Serializable form. Only polynomials over a ring without auxiliary
    /// variables have a file representation.
    pub fn to_json(&self) -> Result<PolynomialJson> {
        if self.ring().aux != 0 {
            return Err(Error::Incompatible(
                "polynomials with auxiliary variables cannot be serialized".into(),
            ));
        }
        let field = self.field();
        Ok(PolynomialJson {
            terms: self
                .terms()
                .iter()
                .map(|(c, m)| TermJson {
                    c: field.format(c),
                    m: m.factors().iter().map(|&(v, e)| [v as u64, e as u64]).collect(),
                })
                .collect(),
        })
    }

    /// Parses the JSON form. `at` names the location used in diagnostics.
    pub fn from_json(ring: Ring, field: F, json: &PolynomialJson, at: &str) -> Result<Self> {
        let nvars = ring.base().nvars() as u64;
        let mut terms = Vec::with_capacity(json.terms.len());
        for (ti, t) in json.terms.iter().enumerate() {
            let c = field
                .parse(&t.c)
                .map_err(|e| Error::Parse(format!("{at}.terms[{ti}].c: {e}")))?;
            let mut pairs = Vec::with_capacity(t.m.len());
            for (mi, &[v, e]) in t.m.iter().enumerate() {
                if v >= nvars {
                    return Err(Error::Parse(format!(
                        "{at}.terms[{ti}].m[{mi}]: variable index {v} out of range (ring has {nvars} variables)"
                    )));
                }
                if e == 0 || e > u16::MAX as u64 {
                    return Err(Error::Parse(format!(
                        "{at}.terms[{ti}].m[{mi}]: invalid exponent {e}"
                    )));
                }
                pairs.push((v as u16, e as u16));
            }
            terms.push((c, Monomial::from_pairs(pairs)));
        }
        Ok(Polynomial::from_terms(ring.base(), field, terms))
    }
}
