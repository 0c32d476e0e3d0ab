use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{Error, Result};
use crate::scalar::ratio;

use super::poly::{det_expansion, Monomial, PowerSumPoly};

/// Left-hand side of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lhs {
    /// `p_m = Tr F^m`
    PowerSum(usize),
    /// `e_m`, the `α^m` coefficient of `det(1 + αF)`
    Elementary(usize),
}

impl Lhs {
    pub fn order(&self) -> usize {
        match *self {
            Lhs::PowerSum(m) | Lhs::Elementary(m) => m,
        }
    }

    pub fn poly(&self) -> PowerSumPoly {
        match *self {
            Lhs::PowerSum(m) => PowerSumPoly::p(m),
            Lhs::Elementary(m) => det_expansion(m, true).pop().unwrap_or_else(PowerSumPoly::one),
        }
    }
}

/// `lhs = rhs`, valid in the defining representation of `spec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub spec: AlgebraSpec,
    pub lhs: Lhs,
    pub rhs: PowerSumPoly,
    pub uses_pfaffian: bool,
}

impl Identity {
    pub fn new(spec: AlgebraSpec, lhs: Lhs, rhs: PowerSumPoly) -> Self {
        let uses_pfaffian = rhs.uses_pfaffian();
        Identity { spec, lhs, rhs, uses_pfaffian }
    }

    pub fn order(&self) -> usize {
        self.lhs.order()
    }

    /// `lhs - rhs`, which vanishes on every `F` in the algebra.
    pub fn residual(&self) -> PowerSumPoly {
        &self.lhs.poly() - &self.rhs
    }

    /// Copy with one rhs coefficient replaced, for negative controls.
    pub fn with_coefficient(&self, m: &Monomial, c: BigRational) -> Self {
        let old = PowerSumPoly::term(m.clone(), self.rhs.coefficient(m));
        let rhs = &(&self.rhs - &old) + &PowerSumPoly::term(m.clone(), c);
        Identity::new(self.spec, self.lhs, rhs)
    }
}

/// Expresses power sums through the primitive ones of a family,
/// deriving and memoizing one rule per non-primitive order.
#[derive(Debug, Clone)]
pub struct Reducer {
    spec: AlgebraSpec,
    rules: HashMap<usize, PowerSumPoly>,
}

impl Reducer {
    pub fn new(spec: AlgebraSpec) -> Self {
        Reducer { spec, rules: HashMap::new() }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    /// Orders `k` whose `p_k` is kept on right-hand sides.
    pub fn is_primitive(&self, k: usize) -> bool {
        let l = self.spec.rank();
        match self.spec.family() {
            Family::A => (2..=l + 1).contains(&k),
            Family::B | Family::C | Family::D => k.is_multiple_of(2) && (2..=2 * l).contains(&k),
            Family::G2 => k == 2 || k == 6,
        }
    }

    fn odd_vanish(&self) -> bool {
        self.spec.family() != Family::A
    }

    /// `p_k` in terms of primitive power sums.
    pub fn rule(&mut self, k: usize) -> PowerSumPoly {
        if k == 1 || (k % 2 == 1 && self.odd_vanish()) {
            return PowerSumPoly::zero();
        }
        if self.is_primitive(k) {
            return PowerSumPoly::p(k);
        }
        if let Some(r) = self.rules.get(&k) {
            return r.clone();
        }
        let rule = if self.spec.family() == Family::G2 && k == 4 {
            PowerSumPoly::p(2).pow(2).scale(&ratio(1, 4))
        } else {
            // e_k = 0 because k exceeds the matrix size (or 2l)
            let e = det_expansion(k, true).pop().expect("k >= 1");
            self.solve_for(k, &e, &PowerSumPoly::zero())
        };
        self.rules.insert(k, rule.clone());
        rule
    }

    /// Solve `relation = value` for `p_k`, then reduce the remainder.
    fn solve_for(&mut self, k: usize, relation: &PowerSumPoly, value: &PowerSumPoly) -> PowerSumPoly {
        let lead = Monomial::new(vec![k], 0);
        let c = relation.coefficient(&lead);
        assert!(!c.is_zero(), "p_{k} appears in e_{k}");
        let rest = relation - &PowerSumPoly::term(lead, c.clone());
        let solved = (value - &rest).scale(&c.recip());
        self.reduce(&solved)
    }

    pub fn reduce(&mut self, poly: &PowerSumPoly) -> PowerSumPoly {
        // largest non-primitive part first: rules for smaller parts are
        // already reduced, so one substitution pass suffices once every
        // rule is memoized in descending order
        if let Some(top) = poly.largest_part() {
            for k in (2..=top).rev() {
                if !self.is_primitive(k) {
                    self.rule(k);
                }
            }
        }
        poly.substitute(|k| self.rule_cached(k), &PowerSumPoly::pf2())
    }

    fn rule_cached(&self, k: usize) -> PowerSumPoly {
        if k == 1 || (k % 2 == 1 && self.odd_vanish()) {
            PowerSumPoly::zero()
        } else if self.is_primitive(k) {
            PowerSumPoly::p(k)
        } else {
            self.rules[&k].clone()
        }
    }
}

/// `p_m` through primitive power sums, from `e_m = 0` beyond the matrix
/// size (A_l: `m > l+1`; B_l, C_l, D_l: even `m > 2l`).
pub fn vanishing_identity(spec: AlgebraSpec, m: usize) -> Result<Identity> {
    let l = spec.rank();
    let ok = match spec.family() {
        Family::A => m > l + 1,
        Family::B | Family::C | Family::D => m.is_multiple_of(2) && m > 2 * l,
        Family::G2 => return g2_reduction(m),
    };
    if !ok {
        return Err(Error::OrderOutOfRange {
            order: m,
            reason: format!("p{m} is not a non-primitive order for {spec}"),
        });
    }
    let rhs = Reducer::new(spec).rule(m);
    Ok(Identity::new(spec, Lhs::PowerSum(m), rhs))
}

/// `e_{2l} = Pf²` for D_l.
pub fn pfaffian_identity(l: usize) -> Result<Identity> {
    let spec = AlgebraSpec::new(Family::D, l)?;
    Ok(Identity::new(spec, Lhs::Elementary(2 * l), PowerSumPoly::pf2()))
}

/// G₂ in its 7-dimensional representation: `p_4 = ¼p_2²`, odd power sums
/// vanish, and for even `m ≥ 8` the relation `e_m = 0` leaves only `p_2`
/// and `p_6`.
pub fn g2_reduction(m: usize) -> Result<Identity> {
    let spec = AlgebraSpec::new(Family::G2, 2)?;
    if m == 2 || m == 6 {
        return Err(Error::OrderOutOfRange { order: m, reason: format!("p{m} is primitive for G2") });
    }
    if m < 2 {
        return Err(Error::OrderOutOfRange { order: m, reason: "orders start at 2".into() });
    }
    let rhs = Reducer::new(spec).rule(m);
    Ok(Identity::new(spec, Lhs::PowerSum(m), rhs))
}
