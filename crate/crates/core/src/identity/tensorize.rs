//! Tensor-level statements of identities under `δ ↦ g/2`.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{d_tensor, Family, Realization};
use crate::error::{Error, Result};
use crate::invariant::{pfaffian_tensor, sudbery_tensor, sym_trace, TraceMethod};
use crate::scalar::{rational, ratio, RealField};
use crate::tensor::SymTensor;

use super::derive::{Identity, Lhs};
use super::poly::PowerSumPoly;

/// Building blocks of covariant tensor expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `g/2`
    Delta,
    D3,
    /// `k^(m)`
    K(usize),
    Sudbery(usize),
    Pf,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Delta => write!(f, "δ"),
            Atom::D3 => write!(f, "d"),
            Atom::K(m) => write!(f, "k{m}"),
            Atom::Sudbery(k) => write!(f, "d{k}"),
            Atom::Pf => write!(f, "Pf"),
        }
    }
}

/// `Σ c · A₁ ⊙ A₂ ⊙ ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorExpr {
    pub terms: Vec<(BigRational, Vec<Atom>)>,
}

impl TensorExpr {
    pub fn atom(a: Atom) -> Self {
        TensorExpr { terms: vec![(BigRational::one(), vec![a])] }
    }

    pub fn term(c: BigRational, atoms: Vec<Atom>) -> Self {
        TensorExpr { terms: vec![(c, atoms)] }
    }

    pub fn plus(mut self, c: BigRational, atoms: Vec<Atom>) -> Self {
        self.terms.push((c, atoms));
        self
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (c, atoms)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = atoms.iter().map(Atom::to_string).collect();
            write!(f, "{c}*{}", names.join("⊙"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovariantIdentity {
    pub order: usize,
    pub lhs: TensorExpr,
    pub rhs: TensorExpr,
}

/// Result of an exact slot-by-slot comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub slots: usize,
    /// First differing canonical slot (0-based).
    pub witness: Option<Vec<usize>>,
}

/// Computes each atom once per realization.
pub struct AtomCache<'a, T> {
    r: &'a Realization<T>,
    method: TraceMethod,
    atoms: HashMap<Atom, SymTensor<T>>,
}

impl<'a, T: RealField> AtomCache<'a, T> {
    pub fn new(r: &'a Realization<T>) -> Self {
        AtomCache { r, method: TraceMethod::Auto, atoms: HashMap::new() }
    }

    pub fn with_method(mut self, method: TraceMethod) -> Self {
        self.method = method;
        self
    }

    pub fn realization(&self) -> &Realization<T> {
        self.r
    }

    pub fn get(&mut self, a: Atom) -> Result<&SymTensor<T>> {
        if !self.atoms.contains_key(&a) {
            let t = match a {
                Atom::Delta => self.r.metric().scale(&rational(&ratio(1, 2))),
                Atom::D3 => d_tensor(self.r),
                Atom::K(m) => sym_trace(self.r, m, self.method)?,
                Atom::Sudbery(k) => sudbery_tensor(self.r, k)?.tensor,
                Atom::Pf => pfaffian_tensor(self.r)?.tensor,
            };
            self.atoms.insert(a, t);
        }
        Ok(&self.atoms[&a])
    }

    /// Evaluate an expression as a symmetric tensor of the given order.
    pub fn build(&mut self, expr: &TensorExpr, order: usize) -> Result<SymTensor<T>> {
        let n = self.r.adjoint_dim();
        let mut out = SymTensor::zeros(n, order);
        for (c, atoms) in &expr.terms {
            let mut t = SymTensor::scalar(n, rational(&BigRational::one()));
            for a in atoms {
                t = t.sym_product(self.get(*a)?)?;
            }
            if t.order() != order {
                return Err(Error::OrderOutOfRange {
                    order: t.order(),
                    reason: format!("term of order {} in an order-{order} expression", t.order()),
                });
            }
            out.add_scaled(&rational(c), &t)?;
        }
        Ok(out)
    }

    pub fn compare(&mut self, id: &CovariantIdentity) -> Result<Verdict> {
        let lhs = self.build(&id.lhs, id.order)?;
        let rhs = self.build(&id.rhs, id.order)?;
        let witness = lhs.first_difference(&rhs)?;
        Ok(Verdict { equal: witness.is_none(), slots: lhs.len(), witness })
    }
}

/// Atoms standing for `p_k` in the given family.
fn power_sum_atoms(id: &Identity, k: usize) -> (BigRational, Vec<Atom>) {
    match k {
        2 => (ratio(2, 1), vec![Atom::Delta]),
        3 if id.spec.family() == Family::A && id.spec.rank() >= 2 => (ratio(2, 1), vec![Atom::D3]),
        _ => (BigRational::one(), vec![Atom::K(k)]),
    }
}

fn translate(id: &Identity, poly: &PowerSumPoly) -> TensorExpr {
    let mut expr = TensorExpr::default();
    for (m, c) in poly.terms() {
        let mut coef = c.clone();
        let mut atoms = Vec::new();
        for &k in m.parts() {
            let (w, a) = power_sum_atoms(id, k);
            coef *= w;
            atoms.extend(a);
        }
        for _ in 0..m.pf2() {
            atoms.extend([Atom::Pf, Atom::Pf]);
        }
        expr.terms.push((coef, atoms));
    }
    expr
}

/// Covariant tensor form: `p_k ↦ k^(k)`, `p₂ ↦ 2δ`, `p₃ ↦ 2d` for A_l
/// with `l ≥ 2`, `Pf² ↦ Pf ⊙ Pf`.
pub fn covariant_form(id: &Identity) -> CovariantIdentity {
    let lhs = match id.lhs {
        Lhs::PowerSum(m) => TensorExpr::atom(Atom::K(m)),
        Lhs::Elementary(_) => translate(id, &id.lhs.poly()),
    };
    CovariantIdentity { order: id.order(), lhs, rhs: translate(id, &id.rhs) }
}

/// Both sides of `id` as symmetric tensors on `r`, compared on every
/// canonical slot.
pub fn tensorize_identity<T: RealField>(id: &Identity, r: &Realization<T>) -> Result<Verdict> {
    if id.spec != r.spec() {
        return Err(Error::InvalidAlgebra(format!("identity for {} applied to {}", id.spec, r.spec())));
    }
    AtomCache::new(r).compare(&covariant_form(id))
}
