//! JSON form of a [`KernelSeries`]. Entries are ordered by their sparse
//! serialization and coefficients use the canonical text form, so equal
//! series always produce identical bytes.

use serde::{Deserialize, Serialize};

use super::{KernelElement, KernelMonomial, KernelSeries, LambdaTag};
use crate::algebra::monomial::{exponents_from_triples, sparse_triples};
use crate::algebra::{NormalMonomial, Shape};
use crate::error::{Error, Result};
use crate::scalars::text::{parse_qufun, qufun_to_text};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub shape: Shape,
    #[serde(rename = "D")]
    pub degree: usize,
    pub lambda: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub degree: usize,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub left: Vec<[usize; 3]>,
    pub right: Vec<[usize; 3]>,
    pub coeff: String,
}

impl SeriesDoc {
    pub fn from_series(s: &KernelSeries) -> Self {
        let terms = s
            .terms
            .iter()
            .enumerate()
            .map(|(degree, k)| {
                let mut entries: Vec<EntryDoc> = k
                    .terms()
                    .map(|(m, c)| EntryDoc {
                        left: sparse_triples(&s.shape, &m.left.e),
                        right: sparse_triples(&s.shape, &m.right.f),
                        coeff: qufun_to_text(c),
                    })
                    .collect();
                entries.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
                TermDoc { degree, entries }
            })
            .collect();
        let lambda = match &s.lambda {
            LambdaTag::Formal => "formal".to_string(),
            LambdaTag::Value(v) => v.clone(),
        };
        SeriesDoc { shape: s.shape, degree: s.degree(), lambda, terms }
    }

    pub fn to_series(&self) -> Result<KernelSeries> {
        let shape = Shape::new(self.shape.m, self.shape.n)?;
        if self.terms.len() != self.degree + 1 {
            return Err(Error::Parse(format!("expected {} terms, found {}", self.degree + 1, self.terms.len())));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (d, t) in self.terms.iter().enumerate() {
            if t.degree != d {
                return Err(Error::Parse(format!("term {d} is labelled degree {}", t.degree)));
            }
            let mut k = KernelElement::zero(shape);
            for e in &t.entries {
                let left = NormalMonomial::holomorphic(exponents_from_triples(&shape, &e.left)?);
                let right = NormalMonomial::antiholomorphic(exponents_from_triples(&shape, &e.right)?);
                k.add_term(KernelMonomial::new(left, right)?, parse_qufun(&e.coeff)?);
            }
            terms.push(k);
        }
        let lambda = if self.lambda == "formal" { LambdaTag::Formal } else { LambdaTag::Value(self.lambda.clone()) };
        Ok(KernelSeries { shape, lambda, terms })
    }
}

pub fn series_to_json(s: &KernelSeries) -> String {
    serde_json::to_string_pretty(&SeriesDoc::from_series(s)).expect("series documents always serialize")
}

pub fn parse_series(text: &str) -> Result<KernelSeries> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_series()
}
