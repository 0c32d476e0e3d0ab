//! Request dispatch for the `casimir` binary. Kept in a library so the
//! integration tests can drive it without spawning processes.

use casimir_core::export::{self, TensorDocument};
use casimir_core::identity::{
    g2_reduction, pfaffian_identity, sample_verify, tensorize_identity, vanishing_identity, Identity,
};
use casimir_core::index::{binomial, factorial};
use casimir_core::invariant::{
    casimir_matrix, check_invariance, cocycle, cocycle_cost, pfaffian_tensor, sudbery_tensor, sym_trace_tensor,
    InvariantTensor,
};
use casimir_core::scalar::{format_complex, format_rational};
use casimir_core::algebra::structure_constants;
use casimir_core::{build_algebra, AlgebraSpec, Error, Family, Realization};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

type Q = BigRational;

/// Rough exact multiply-adds per second on one desktop core, used only
/// to refuse long jobs up front.
const OPS_PER_SECOND: f64 = 5.0e5;
const LONG_RUN_SECONDS: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Catalog,
    Tensor,
    IdentityDerive,
    IdentityVerify,
    Cocycle,
    Casimir,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TensorKind {
    /// `k^(m)`; the metric at order 2.
    #[default]
    SymTrace,
    Metric,
    D3,
    Sudbery,
    Pfaffian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRequest {
    pub subcommand: Subcommand,
    pub algebra: AlgebraSpec,
    pub order: Option<usize>,
    pub kind: TensorKind,
    pub format: Format,
    pub seed: u64,
    pub trials: usize,
    pub exact: bool,
    pub sampled: bool,
    pub long_run: bool,
    /// Identity text to verify instead of the derived one.
    pub identity: Option<String>,
}

impl CommandRequest {
    pub fn new(subcommand: Subcommand, algebra: AlgebraSpec) -> Self {
        CommandRequest {
            subcommand,
            algebra,
            order: None,
            kind: TensorKind::default(),
            format: Format::default(),
            seed: 0,
            trials: 10,
            exact: false,
            sampled: false,
            long_run: false,
            identity: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { status: 1, stdout: String::new(), stderr: msg.into() }
    }

    fn failed(stdout: String, msg: impl Into<String>) -> Self {
        Outcome { status: 2, stdout, stderr: msg.into() }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

/// Estimated operation count for building an order-`m` symmetric tensor
/// in dimension `n` from traces of words.
pub fn tensor_cost(n: usize, m: usize) -> f64 {
    binomial(n + m - 1, m) as f64 * factorial(m.saturating_sub(1)) as f64 * m as f64
}

fn gate(req: &CommandRequest, ops: f64, what: &str) -> Option<Outcome> {
    let secs = ops / OPS_PER_SECOND;
    if secs > LONG_RUN_SECONDS && !req.long_run {
        Some(Outcome::usage(format!(
            "{what} on {} is estimated at {:.0} s (about {:.1e} operations); pass --long-run to proceed",
            req.algebra, secs, ops
        )))
    } else {
        None
    }
}

pub fn run(req: &CommandRequest) -> Outcome {
    let r = match build_algebra::<Q>(req.algebra) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    match req.subcommand {
        Subcommand::Catalog => catalog(req, &r),
        Subcommand::Tensor => tensor(req, &r),
        Subcommand::IdentityDerive => identity_derive(req),
        Subcommand::IdentityVerify => identity_verify(req, &r),
        Subcommand::Cocycle => cocycle_cmd(req, &r),
        Subcommand::Casimir => casimir_cmd(req, &r),
    }
}

fn catalog(req: &CommandRequest, r: &Realization<Q>) -> Outcome {
    let metric = export::entries(r.metric()).expect("exact metric");
    match req.format {
        Format::Text => {
            let mut s = format!(
                "{}: rep_dim {}, adjoint_dim {}, preserved form {}\nmetric:\n",
                r.spec(),
                r.rep_dim(),
                r.adjoint_dim(),
                if r.preserved_form().is_some() { "yes" } else { "no" }
            );
            s.push_str(&export::to_text(r.metric()).expect("exact metric"));
            Outcome::ok(s)
        }
        Format::Json => {
            let gens: Vec<Value> = r
                .generators()
                .iter()
                .map(|x| {
                    let n = x.dim();
                    let mut nz = Vec::new();
                    for i in 0..n {
                        for j in 0..n {
                            let v = x.get(i, j);
                            if !v.is_zero() {
                                nz.push(json!({
                                    "row": i + 1,
                                    "col": j + 1,
                                    "re": format_rational(&v.re),
                                    "im": format_rational(&v.im),
                                }));
                            }
                        }
                    }
                    Value::Array(nz)
                })
                .collect();
            Outcome::ok(pretty(&json!({
                "algebra": r.spec().to_string(),
                "rep_dim": r.rep_dim(),
                "adjoint_dim": r.adjoint_dim(),
                "basis": export::BASIS,
                "metric": metric,
                "generators": gens,
            })))
        }
    }
}

/// The tensor selected by `--kind` and `--order`.
fn source_tensor(req: &CommandRequest, r: &Realization<Q>) -> casimir_core::Result<InvariantTensor<Q>> {
    match req.kind {
        TensorKind::Metric => Ok(InvariantTensor::metric(r)),
        TensorKind::D3 => Ok(InvariantTensor::d3(r)),
        TensorKind::Pfaffian => pfaffian_tensor(r),
        TensorKind::Sudbery => {
            let k = req.order.ok_or_else(|| order_required("sudbery"))?;
            sudbery_tensor(r, k)
        }
        TensorKind::SymTrace => {
            let m = req.order.ok_or_else(|| order_required("sym-trace"))?;
            if m == 2 {
                Ok(InvariantTensor::metric(r))
            } else {
                sym_trace_tensor(r, m)
            }
        }
    }
}

fn order_required(kind: &str) -> Error {
    Error::OrderOutOfRange { order: 0, reason: format!("--order is required for {kind}") }
}

fn source_order(req: &CommandRequest, r: &Realization<Q>) -> Option<usize> {
    match req.kind {
        TensorKind::Metric => Some(2),
        TensorKind::D3 => Some(3),
        TensorKind::Pfaffian => Some(r.rep_dim() / 2),
        TensorKind::Sudbery | TensorKind::SymTrace => req.order,
    }
}

fn tensor(req: &CommandRequest, r: &Realization<Q>) -> Outcome {
    if let Some(m) = source_order(req, r) {
        if let Some(refused) = gate(req, tensor_cost(r.adjoint_dim(), m), "this tensor") {
            return refused;
        }
    }
    let h = match source_tensor(req, r) {
        Ok(h) => h,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let body = match req.format {
        Format::Json => TensorDocument::from_invariant(&h, r.metric()).expect("exact tensor").to_json() + "\n",
        Format::Text => export::to_text(&h.tensor).expect("exact tensor"),
    };
    if req.exact {
        let sc = structure_constants(r);
        match sc.and_then(|sc| check_invariance(&h.tensor, &sc)) {
            Ok(true) => {}
            Ok(false) => return Outcome::failed(body, format!("{} is not invariant", h.provenance)),
            Err(e) => return Outcome::failed(body, e.to_string()),
        }
    }
    Outcome::ok(body)
}

/// The identity the catalog derives for `spec` at order `m`.
pub fn derived_identity(spec: AlgebraSpec, m: usize) -> casimir_core::Result<Identity> {
    match spec.family() {
        Family::G2 => g2_reduction(m),
        Family::D if m == 2 * spec.rank() => pfaffian_identity(spec.rank()),
        _ => vanishing_identity(spec, m),
    }
}

fn identity_json(id: &Identity) -> Value {
    let terms: Vec<Value> = id
        .rhs
        .terms()
        .map(|(mono, c)| {
            json!({
                "partition": mono.parts(),
                "pf2": mono.pf2(),
                "coefficient": format_rational(c),
            })
        })
        .collect();
    json!({
        "algebra": id.spec.to_string(),
        "lhs": id.lhs.to_string(),
        "order": id.order(),
        "uses_pfaffian": id.uses_pfaffian,
        "text": id.to_string(),
        "rhs": terms,
    })
}

fn identity_derive(req: &CommandRequest) -> Outcome {
    let Some(m) = req.order else {
        return Outcome::usage("--order is required");
    };
    match derived_identity(req.algebra, m) {
        Ok(id) => Outcome::ok(match req.format {
            Format::Text => format!("{id}\n"),
            Format::Json => pretty(&identity_json(&id)),
        }),
        Err(e) => Outcome::usage(e.to_string()),
    }
}

fn identity_verify(req: &CommandRequest, r: &Realization<Q>) -> Outcome {
    let id = match (&req.identity, req.order) {
        (Some(text), _) => Identity::from_text(req.algebra, text),
        (None, Some(m)) => derived_identity(req.algebra, m),
        (None, None) => return Outcome::usage("--order or --identity is required"),
    };
    let id = match id {
        Ok(id) => id,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let sampled = req.sampled;
    let exact = req.exact || !req.sampled;
    if exact {
        if let Some(refused) = gate(req, 3.0 * tensor_cost(r.adjoint_dim(), id.order()), "exact verification") {
            return refused;
        }
    }
    let mut report = json!({ "identity": id.to_string(), "algebra": r.spec().to_string() });
    let mut lines = vec![id.to_string()];
    let mut failure = None;
    if sampled {
        match sample_verify(&id, r, req.trials.max(1), req.seed) {
            Ok(rep) => {
                let residuals: Vec<String> = rep.residuals.iter().map(format_complex).collect();
                let zero = rep.all_zero();
                lines.push(format!(
                    "sampled: {} trials, seed {}, {}",
                    rep.residuals.len(),
                    rep.seed,
                    if zero { "all residuals zero".to_string() } else { format!("residuals {}", residuals.join(", ")) }
                ));
                report["sampled"] = json!({ "seed": rep.seed, "residuals": residuals, "zero": zero });
                if let Some(t) = rep.first_failure() {
                    failure = Some(format!("nonzero residual at trial {}", t + 1));
                }
            }
            Err(e) => return Outcome::usage(e.to_string()),
        }
    }
    if exact {
        match tensorize_identity(&id, r) {
            Ok(v) => {
                let witness = v.witness.as_ref().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>());
                lines.push(match &witness {
                    None => format!("exact: equal on all {} slots", v.slots),
                    Some(w) => format!("exact: unequal at slot {w:?}"),
                });
                report["exact"] = json!({ "equal": v.equal, "slots": v.slots, "witness": witness });
                if let Some(w) = witness {
                    failure.get_or_insert(format!("tensor mismatch at slot {w:?}"));
                }
            }
            Err(e) => return Outcome::usage(e.to_string()),
        }
    }
    let body = match req.format {
        Format::Text => lines.join("\n") + "\n",
        Format::Json => pretty(&report),
    };
    match failure {
        None => Outcome::ok(body),
        Some(msg) => Outcome::failed(body, msg),
    }
}

fn cocycle_cmd(req: &CommandRequest, r: &Realization<Q>) -> Outcome {
    let Some(m) = source_order(req, r) else {
        return Outcome::usage("--order is required");
    };
    let ops = cocycle_cost(r.adjoint_dim(), m) + tensor_cost(r.adjoint_dim(), m);
    if let Some(refused) = gate(req, ops, "this cocycle") {
        return refused;
    }
    let h = match source_tensor(req, r) {
        Ok(h) => h,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let sc = match structure_constants(r) {
        Ok(sc) => sc,
        Err(e) => return Outcome::failed(String::new(), e.to_string()),
    };
    let c = match cocycle(&sc, &h) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let nonzero = c.tensor.nonzero().count();
    let verdict = if c.trivially_zero {
        format!("zero cocycle: order {} exceeds adjoint dimension {}", c.order(), r.adjoint_dim())
    } else if c.is_zero() {
        "zero cocycle: non-primitive".to_string()
    } else {
        format!("nonzero cocycle of order {} ({nonzero} independent components)", c.order())
    };
    Outcome::ok(match req.format {
        Format::Text => format!("{}: {} -> {verdict}\n", r.spec(), h.provenance),
        Format::Json => {
            let entries: Vec<Value> = c
                .tensor
                .nonzero()
                .map(|(idx, v)| {
                    json!({
                        "idx": idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "re": format_rational(&v.re),
                        "im": format_rational(&v.im),
                    })
                })
                .collect();
            pretty(&json!({
                "algebra": r.spec().to_string(),
                "source": h.provenance.to_string(),
                "source_order": c.source_order,
                "order": c.order(),
                "zero": c.is_zero(),
                "trivially_zero": c.trivially_zero,
                "verdict": verdict,
                "entries": entries,
            }))
        }
    })
}

fn casimir_cmd(req: &CommandRequest, r: &Realization<Q>) -> Outcome {
    let mut req = req.clone();
    if req.kind == TensorKind::SymTrace && req.order.is_none() {
        req.order = Some(2);
    }
    let h = match source_tensor(&req, r) {
        Ok(h) => h,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    match casimir_matrix(r, &h) {
        Ok(c) => {
            let scalar = c.as_scalar();
            let text = match &scalar {
                Some(s) => format!("{}: casimir of {} = {} * I (central)\n", r.spec(), h.provenance, format_complex(s)),
                None => format!("{}: casimir of {} is central but not scalar\n", r.spec(), h.provenance),
            };
            Outcome::ok(match req.format {
                Format::Text => text,
                Format::Json => pretty(&json!({
                    "algebra": r.spec().to_string(),
                    "source": h.provenance.to_string(),
                    "central": true,
                    "scalar": scalar.as_ref().map(format_complex),
                })),
            })
        }
        Err(Error::NotCentral(i)) => {
            Outcome::failed(String::new(), format!("casimir element fails to commute with generator {}", i + 1))
        }
        Err(e) => Outcome::usage(e.to_string()),
    }
}
