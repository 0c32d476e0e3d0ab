use casimir_core::identity::{
    det_expansion, g2_reduction, pfaffian_identity, power_sums, random_rational_vector, residual_at, sample_verify,
    tensorize_identity, vanishing_identity, Identity, Monomial, PowerSumPoly, Reducer,
};
use casimir_core::scalar::{rational, ratio};
use casimir_core::{build_algebra, AlgebraSpec, ExactMatrix, GaussianRational, Realization};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn alg(tok: &str) -> Realization<Q> {
    build_algebra(tok.parse::<AlgebraSpec>().unwrap()).unwrap()
}

fn q(v: (i64, i64)) -> Q {
    ratio(v.0, v.1)
}

fn arb_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    let entry = ((-9i64..=9, 1i64..=9), (-9i64..=9, 1i64..=9));
    prop::collection::vec(entry, n * n).prop_map(move |v| {
        let rows: Vec<Vec<GaussianRational>> =
            v.chunks(n).map(|r| r.iter().map(|&(a, b)| Complex::new(q(a), q(b))).collect()).collect();
        ExactMatrix::from_rows(rows).unwrap()
    })
}

/// Coefficients of `det(1 + αM)` by expanding the determinant of a matrix
/// whose entries are polynomials in `α`.
fn det_poly(a: &ExactMatrix) -> Vec<GaussianRational> {
    let n = a.dim();
    // Leibniz over permutations, each term a product of (δ_ij + α a_ij)
    let mut perm: Vec<usize> = (0..n).collect();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    loop {
        let mut term = vec![GaussianRational::zero(); n + 1];
        term[0] = GaussianRational::one();
        for (i, &j) in perm.iter().enumerate() {
            let c0 = if i == j { GaussianRational::one() } else { GaussianRational::zero() };
            let c1 = a.get(i, j).clone();
            let mut next = vec![GaussianRational::zero(); n + 1];
            for k in 0..n {
                next[k] += term[k].clone() * c0.clone();
                next[k + 1] += term[k].clone() * c1.clone();
            }
            term = next;
        }
        let sign = parity(&perm);
        for k in 0..=n {
            coeffs[k] += term[k].clone() * GaussianRational::new(Q::from_integer(sign.into()), Q::zero());
        }
        if !casimir_core::index::next_permutation(&mut perm) {
            break;
        }
    }
    coeffs
}

fn parity(p: &[usize]) -> i64 {
    let mut v = p.to_vec();
    casimir_core::index::sort_with_parity(&mut v).map(i64::from).unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn expansion_matches_determinant(a in (2usize..=4).prop_flat_map(arb_matrix)) {
        let n = a.dim();
        let e = det_expansion(n + 2, false);
        let p = power_sums(&a, n + 2);
        let want = det_poly(&a);
        for m in 1..=n + 2 {
            let got = e[m - 1].evaluate(|k| p[k - 1].clone(), None);
            let expected = if m <= n { want[m].clone() } else { GaussianRational::zero() };
            prop_assert_eq!(got, expected, "order {}", m);
        }
    }

    #[test]
    fn text_round_trip(terms in prop::collection::vec(
        (prop::collection::vec(2usize..9, 0..4), 0usize..2, (-20i64..20, 1i64..12)), 0..6)
    ) {
        let mut p = PowerSumPoly::zero();
        for (parts, pf2, c) in terms {
            p = &p + &PowerSumPoly::term(Monomial::new(parts, pf2), q(c));
        }
        let back: PowerSumPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn a_family_high_coefficients_vanish(l in 1usize..=3, seed in any::<u64>()) {
        let r = alg(&format!("A{l}"));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y: Vec<GaussianRational> = random_rational_vector(&mut rng, r.adjoint_dim()).iter().map(rational).collect();
        let f = r.span(&y).unwrap();
        let p = power_sums(&f, 9);
        for (m, em) in det_expansion(9, true).iter().enumerate().map(|(i, e)| (i + 1, e)) {
            if m > l + 1 {
                prop_assert!(em.evaluate(|k| p[k - 1].clone(), None).is_zero());
            }
        }
    }

    #[test]
    fn bc_family_high_even_coefficients_vanish(tok in prop::sample::select(vec!["B2", "C2", "B3", "C3"]), seed in any::<u64>()) {
        let r = alg(tok);
        let l = r.spec().rank();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y: Vec<GaussianRational> = random_rational_vector(&mut rng, r.adjoint_dim()).iter().map(rational).collect();
        let p = power_sums(&r.span(&y).unwrap(), 10);
        for k in (1..=10).step_by(2) {
            prop_assert!(p[k - 1].is_zero());
        }
        for (m, em) in det_expansion(10, true).iter().enumerate().map(|(i, e)| (i + 1, e)) {
            // odd e_m vanish once odd p's are zero
            let odd_free = em.substitute(|k| if k % 2 == 1 { PowerSumPoly::zero() } else { PowerSumPoly::p(k) }, &PowerSumPoly::pf2());
            if m % 2 == 1 {
                prop_assert!(odd_free.is_zero());
            } else if m > 2 * l {
                prop_assert!(em.evaluate(|k| p[k - 1].clone(), None).is_zero());
            }
        }
    }
}

fn all_identities() -> Vec<Identity> {
    let mut out = Vec::new();
    for tok in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D2", "D3", "D4"] {
        let spec: AlgebraSpec = tok.parse().unwrap();
        for m in 2..=10 {
            if let Ok(id) = vanishing_identity(spec, m) {
                out.push(id);
            }
        }
    }
    for m in [4, 5, 7, 8, 10] {
        out.push(g2_reduction(m).unwrap());
    }
    for l in 2..=4 {
        out.push(pfaffian_identity(l).unwrap());
    }
    out
}

#[test]
fn every_identity_samples_to_zero() {
    for id in all_identities() {
        let r = build_algebra::<Q>(id.spec).unwrap();
        let rep = sample_verify(&id, &r, 10, 42).unwrap();
        assert!(rep.all_zero(), "{} {id}: {:?}", id.spec, rep.first_failure());
    }
}

#[test]
fn every_identity_up_to_order_six_holds_on_tensors() {
    for id in all_identities().into_iter().filter(|id| id.order() <= 6) {
        let r = build_algebra::<Q>(id.spec).unwrap();
        let v = tensorize_identity(&id, &r).unwrap();
        assert!(v.equal, "{} {id} differs at {:?}", id.spec, v.witness);
    }
}

#[test]
fn reductions_use_primitive_parts_only() {
    for id in all_identities() {
        let red = Reducer::new(id.spec);
        for (m, _) in id.rhs.terms() {
            assert!(m.parts().iter().all(|&k| red.is_primitive(k) && k < id.order()), "{} {id}", id.spec);
        }
        if id.uses_pfaffian {
            assert_eq!(id.spec.family(), casimir_core::Family::D);
            assert_eq!(id.order(), 2 * id.spec.rank());
        }
    }
}

#[test]
fn so4_block_rotation() {
    // F = a·X_12 + b·X_34 is block diagonal; det F = (ab)² = Pf(F)²
    let r = alg("D2");
    let mut y = vec![GaussianRational::zero(); 6];
    y[0] = rational(&ratio(3, 2));
    y[5] = rational(&ratio(-5, 7));
    let f = r.span(&y).unwrap();
    let (a, b) = (ratio(3, 2), ratio(-5, 7));
    let ab2 = rational::<Q>(&(&a * &b * &a * &b));
    assert_eq!(f.determinant(), ab2);
    let pf = f.pfaffian();
    assert_eq!(pf.clone() * pf, ab2);
    assert!(residual_at(&pfaffian_identity(2).unwrap(), &f).is_zero());
}

/// Eigenvalues of F are 0, ±a, ±b. With s = a², t = b²: p2 = 2(s+t),
/// p4 = 2(s²+t²) and p8 = 2(s⁴+t⁴), so Newton in (s, t) gives p8 directly.
#[test]
fn b2_octic_from_eigenvalues() {
    let r = alg("B2");
    let id = vanishing_identity(r.spec(), 8).unwrap();
    assert_eq!(id.to_string(), "p8 = 1/4*p4^2 + 1/4*p2^2*p4 - 1/16*p2^4");
    assert!(sample_verify(&id, &r, 10, 8).unwrap().all_zero());
}

#[test]
fn false_identity_is_caught_both_ways() {
    let r = alg("A2");
    let id = Identity::from_text(r.spec(), "p4 = p2^2").unwrap();
    assert_eq!(sample_verify(&id, &r, 3, 0).unwrap().first_failure(), Some(0));
    assert!(!tensorize_identity(&id, &r).unwrap().equal);
    let ok = Identity::from_text(r.spec(), "p4 = 1/2*p2^2").unwrap();
    assert_eq!(ok, vanishing_identity(r.spec(), 4).unwrap());
}
