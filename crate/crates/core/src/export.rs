//! JSON and text export of symmetric tensors.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::invariant::InvariantTensor;
use crate::scalar::{format_rational, parse_rational, to_exact_complex, Real};
use crate::tensor::SymTensor;

pub const BASIS: &str = "catalog-defining";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    /// Sorted, 1-based.
    pub idx: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub algebra: String,
    pub order: usize,
    pub dim: usize,
    pub basis: String,
    pub metric: Vec<Entry>,
    pub entries: Vec<Entry>,
}

fn exact<T: Real>(z: &Complex<T>) -> Result<Complex<BigRational>> {
    to_exact_complex(z).ok_or_else(|| Error::NotApplicable {
        algebra: String::new(),
        reason: "export needs exact scalars".into(),
    })
}

/// Nonzero canonical slots, zero entries omitted.
pub fn entries<T: Real>(t: &SymTensor<T>) -> Result<Vec<Entry>> {
    t.nonzero()
        .map(|(idx, v)| {
            let q = exact(v)?;
            Ok(Entry {
                idx: idx.iter().map(|i| i + 1).collect(),
                re: format_rational(&q.re),
                im: format_rational(&q.im),
            })
        })
        .collect()
}

impl TensorDocument {
    pub fn new<T: Real>(spec: AlgebraSpec, tensor: &SymTensor<T>, metric: &SymTensor<T>) -> Result<Self> {
        Ok(TensorDocument {
            algebra: spec.to_string(),
            order: tensor.order(),
            dim: tensor.dim(),
            basis: BASIS.into(),
            metric: entries(metric)?,
            entries: entries(tensor)?,
        })
    }

    pub fn from_invariant<T: Real>(h: &InvariantTensor<T>, metric: &SymTensor<T>) -> Result<Self> {
        TensorDocument::new(h.spec, &h.tensor, metric)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn spec(&self) -> Result<AlgebraSpec> {
        self.algebra.parse()
    }

    /// The stored tensor, validated against the declared order and dim.
    pub fn tensor(&self) -> Result<SymTensor<BigRational>> {
        read_entries(&self.entries, self.dim, self.order)
    }

    pub fn metric_tensor(&self) -> Result<SymTensor<BigRational>> {
        read_entries(&self.metric, self.dim, 2)
    }
}

fn read_entries(list: &[Entry], dim: usize, order: usize) -> Result<SymTensor<BigRational>> {
    let mut t = SymTensor::zeros(dim, order);
    for e in list {
        if e.idx.len() != order {
            return Err(Error::DimensionMismatch { expected: order, found: e.idx.len() });
        }
        if let Some(&bad) = e.idx.iter().find(|&&i| i == 0 || i > dim) {
            return Err(Error::Parse(format!("index {bad} outside 1..={dim}")));
        }
        let idx: Vec<usize> = e.idx.iter().map(|i| i - 1).collect();
        t.set(&idx, Complex::new(parse_rational(&e.re)?, parse_rational(&e.im)?));
    }
    Ok(t)
}

/// One line per nonzero slot: `[i1,...,im] = p/q` or `... = p/q + p/q i`.
pub fn to_text<T: Real>(t: &SymTensor<T>) -> Result<String> {
    let mut out = String::new();
    for (idx, v) in t.nonzero() {
        let q = exact(v)?;
        let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("[{}] = {}", idx.join(","), format_rational(&q.re)));
        if !q.im.is_zero() {
            out.push_str(&format!(" + {} i", format_rational(&q.im)));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, d_tensor, Realization};
    use crate::invariant::{sym_trace, TraceMethod};

    type Q = BigRational;

    fn alg(tok: &str) -> Realization<Q> {
        build_algebra(tok.parse().unwrap()).unwrap()
    }

    #[test]
    fn su2_metric_document() {
        let r = alg("A1");
        let doc = TensorDocument::new(r.spec(), r.metric(), r.metric()).unwrap();
        assert_eq!(doc.entries.len(), 3);
        assert!(doc.entries.iter().all(|e| e.re == "2/1" && e.im == "0"));
        assert_eq!(doc.entries[0].idx, vec![1, 1]);
    }

    #[test]
    fn zero_tensor_keeps_shape() {
        let r = alg("B2");
        let z = SymTensor::<Q>::zeros(10, 3);
        let doc = TensorDocument::new(r.spec(), &z, r.metric()).unwrap();
        assert!(doc.entries.is_empty());
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["order"], 3);
        assert_eq!(v["dim"], 10);
        assert_eq!(v["entries"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn json_round_trip() {
        let r = alg("A2");
        for t in [d_tensor(&r), sym_trace(&r, 4, TraceMethod::Auto).unwrap()] {
            let doc = TensorDocument::new(r.spec(), &t, r.metric()).unwrap();
            let back = TensorDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.tensor().unwrap(), t);
            assert_eq!(&back.metric_tensor().unwrap(), r.metric());
            assert_eq!(back.spec().unwrap(), r.spec());
        }
    }

    #[test]
    fn a1_quartic_slot() {
        let r = alg("A1");
        let k4 = sym_trace(&r, 4, TraceMethod::Auto).unwrap();
        let doc = TensorDocument::new(r.spec(), &k4, r.metric()).unwrap();
        let e = doc.entries.iter().find(|e| e.idx == vec![1, 1, 2, 2]).unwrap();
        assert_eq!((e.re.as_str(), e.im.as_str()), ("2/3", "0"));
    }

    #[test]
    fn text_lines() {
        let mut t = SymTensor::<Q>::zeros(2, 2);
        t.set(&[0, 1], Complex::new(Q::new(1.into(), 2.into()), Q::new((-3).into(), 1.into())));
        t.set(&[1, 1], Complex::new(Q::from_integer(2.into()), Q::zero()));
        assert_eq!(to_text(&t).unwrap(), "[1,2] = 1/2 + -3/1 i\n[2,2] = 2/1\n");
    }

    #[test]
    fn import_rejects_bad_indices() {
        let mut doc = TensorDocument::new(alg("A1").spec(), alg("A1").metric(), alg("A1").metric()).unwrap();
        doc.entries[0].idx = vec![0, 1];
        assert!(doc.tensor().is_err());
        doc.entries[0].idx = vec![1];
        assert!(doc.tensor().is_err());
    }
}
