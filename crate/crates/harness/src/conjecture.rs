//! The registry of checks run per `(m, λ)` pair.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use csflab_core::csf::{e_expansion, SymFunc};
use csflab_core::hikita::{enumerate_hikita, shape_factorial, Hikita};
use csflab_core::poset::{poset_from_hessenberg, Poset, ReverseHessenberg};
use csflab_core::qcore::{Composition, Partition};
use csflab_core::structural::{greedy_shape_family_all, k_set};
use csflab_core::tableaux::{enumerate_class, enumerate_standard, inv_generating_function, inv_p, Tableau, TableauClass};
use csflab_core::{Error, QPoly, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::table::{OvercountTable, TABLE_MAX_N, TABLE_MIN_N};
use crate::HarnessError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    Bounds,
    UndercountQ,
    OvercountQ,
    Nonzero,
    StrongIffHikita,
    HLowerBound,
    BarbellPowerful,
    TheoremSuite,
}

impl Conjecture {
    pub const ALL: [Conjecture; 8] = [
        Conjecture::Bounds,
        Conjecture::UndercountQ,
        Conjecture::OvercountQ,
        Conjecture::Nonzero,
        Conjecture::StrongIffHikita,
        Conjecture::HLowerBound,
        Conjecture::BarbellPowerful,
        Conjecture::TheoremSuite,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Conjecture::Bounds => "bounds",
            Conjecture::UndercountQ => "undercount-q",
            Conjecture::OvercountQ => "overcount-q",
            Conjecture::Nonzero => "nonzero",
            Conjecture::StrongIffHikita => "strong-iff-hikita",
            Conjecture::HLowerBound => "h-lower-bound",
            Conjecture::BarbellPowerful => "barbell-powerful",
            Conjecture::TheoremSuite => "theorem-suite",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Conjecture {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| HarnessError::UnknownConjecture(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Skipped,
}

/// Result of one check before it is attached to its task.
#[derive(Clone, PartialEq, Debug)]
pub struct Outcome {
    pub status: Status,
    pub detail: Option<Value>,
    pub witness: Option<Value>,
}

impl Outcome {
    fn holds() -> Self {
        Outcome { status: Status::Holds, detail: None, witness: None }
    }

    fn fails(witness: Value) -> Self {
        Outcome { status: Status::Fails, detail: None, witness: Some(witness) }
    }

    fn skipped(reason: &str) -> Self {
        Outcome { status: Status::Skipped, detail: Some(json!({ "reason": reason })), witness: None }
    }

    fn verdict(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::holds()
        } else {
            Outcome::fails(witness())
        }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// A poset together with its lazily computed `e`-expansion.
pub struct PosetContext {
    pub m: ReverseHessenberg,
    pub poset: Poset,
    /// The K-chain clique sizes when the poset was built from one.
    pub gamma: Option<Composition>,
    expansion: OnceLock<Result<SymFunc, Error>>,
}

impl PosetContext {
    pub fn new(m: ReverseHessenberg) -> Self {
        let poset = poset_from_hessenberg(&m);
        PosetContext { m, poset, gamma: None, expansion: OnceLock::new() }
    }

    pub fn from_kchain(gamma: Composition) -> Result<Self, Error> {
        let mut ctx = PosetContext::new(ReverseHessenberg::kchain(&gamma)?);
        ctx.gamma = Some(gamma);
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn expansion(&self) -> Result<&SymFunc, Error> {
        self.expansion.get_or_init(|| e_expansion(&self.poset)).as_ref().map_err(Clone::clone)
    }

    /// `c_λ(q)`.
    pub fn c(&self, lambda: &Partition) -> Result<QPoly, Error> {
        Ok(self.expansion()?.coeff(lambda))
    }
}

/// Sample points for the `h_T` inequalities.
pub fn h_sample_points() -> Vec<Rational> {
    [(0, 1), (1, 3), (1, 2), (1, 1), (2, 1), (10, 1)]
        .into_iter()
        .map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

pub fn poly_json(p: &QPoly) -> Value {
    match p.to_ints() {
        Some(v) => json!(v),
        None => json!(p.to_string()),
    }
}

fn tableaux_json(ts: &[Tableau]) -> Value {
    json!(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>())
}

/// Runs `conjecture` on the pair `(ctx, λ)`.
pub fn check(conjecture: Conjecture, ctx: &PosetContext, lambda: &Partition, table: &OvercountTable) -> Result<Outcome, Error> {
    let p = &ctx.poset;
    match conjecture {
        Conjecture::Bounds => {
            let strong = enumerate_class(p, lambda, TableauClass::Strong).len();
            let pow = enumerate_class(p, lambda, TableauClass::Powerful).len();
            let c = ctx.c(lambda)?.eval(&Rational::from_integer(1.into()));
            let (lo, hi) = (Rational::from_integer(strong.into()), Rational::from_integer(pow.into()));
            Ok(Outcome::verdict(lo <= c && c <= hi, || json!({ "strong": strong, "c_at_1": c.to_string(), "powerful": pow })))
        }
        Conjecture::UndercountQ => {
            let strong = inv_generating_function(p, &enumerate_class(p, lambda, TableauClass::Strong));
            let diff = &ctx.c(lambda)? - &strong;
            Ok(Outcome::verdict(diff.has_nonnegative_coeffs(), || json!({ "difference": poly_json(&diff) })))
        }
        Conjecture::OvercountQ => {
            let pow = inv_generating_function(p, &enumerate_class(p, lambda, TableauClass::Powerful));
            let diff = &pow - &ctx.c(lambda)?;
            let mut out = Outcome::verdict(diff.has_nonnegative_coeffs(), || json!({ "discrepancy": poly_json(&diff) }));
            let tabulated = (TABLE_MIN_N..=TABLE_MAX_N).contains(&ctx.n()) && p.inc_graph_connected();
            if out.status == Status::Holds && tabulated && table.lookup(&ctx.m, lambda) != diff {
                out = Outcome::fails(json!({
                    "discrepancy": poly_json(&diff),
                    "tabulated": poly_json(&table.lookup(&ctx.m, lambda)),
                }));
            }
            if out.status == Status::Holds && !diff.is_zero() {
                out = out.with_detail(json!({ "discrepancy": poly_json(&diff) }));
            }
            Ok(out)
        }
        Conjecture::Nonzero => {
            let strong = enumerate_class(p, lambda, TableauClass::Strong);
            let c = ctx.c(lambda)?;
            Ok(Outcome::verdict(!strong.is_empty() || c.is_zero(), || json!({ "c": poly_json(&c) })))
        }
        Conjecture::StrongIffHikita => {
            let strong = enumerate_class(p, lambda, TableauClass::Strong);
            let hik = enumerate_hikita(&ctx.m, lambda);
            Ok(Outcome::verdict(strong.is_empty() == hik.is_empty(), || {
                json!({ "strong": strong.len(), "hikita": hik.len() })
            }))
        }
        Conjecture::HLowerBound => {
            let hik = enumerate_hikita(&ctx.m, lambda);
            if hik.is_empty() {
                return Ok(Outcome::skipped("no Hikita tableaux"));
            }
            let fact = shape_factorial(lambda);
            let mut engine = Hikita::new(&ctx.m);
            let one = Rational::from_integer(1.into());
            for t in &hik {
                let h = engine.h(t)?;
                for a in h_sample_points() {
                    let value = h.eval_at(&a)? * fact.eval(&a);
                    if value < one {
                        return Ok(Outcome::fails(json!({
                            "tableau": t.to_string(),
                            "alpha": a.to_string(),
                            "h_times_factorial": value.to_string(),
                        })));
                    }
                }
            }
            Ok(Outcome::holds().with_detail(json!({ "hikita": hik.len() })))
        }
        Conjecture::BarbellPowerful => {
            let Some(gamma) = &ctx.gamma else {
                return Ok(Outcome::skipped("not a barbell K-chain"));
            };
            let pow = inv_generating_function(p, &enumerate_class(p, lambda, TableauClass::Powerful));
            let c = ctx.c(lambda)?;
            Ok(Outcome::verdict(pow == c, || json!({ "powerful": poly_json(&pow), "c": poly_json(&c) }))
                .with_detail(json!({ "gamma": gamma.parts() })))
        }
        Conjecture::TheoremSuite => theorem_suite(ctx, lambda),
    }
}

fn subset(a: &[Tableau], b: &[Tableau]) -> bool {
    let b: HashSet<&Tableau> = b.iter().collect();
    a.iter().all(|t| b.contains(t))
}

fn theorem_suite(ctx: &PosetContext, lambda: &Partition) -> Result<Outcome, Error> {
    let p = &ctx.poset;
    let n = ctx.n();
    let hik = enumerate_hikita(&ctx.m, lambda);
    let strong = enumerate_class(p, lambda, TableauClass::Strong);
    let pow = enumerate_class(p, lambda, TableauClass::Powerful);
    let standard = enumerate_standard(p, lambda);
    let c = ctx.c(lambda)?;
    let mut broken: Vec<Value> = Vec::new();
    let mut checked: Vec<&str> = vec!["inclusions", "inv-zeta"];
    if !subset(&hik, &strong) {
        broken.push(json!({ "check": "hikita-in-strong", "hikita": tableaux_json(&hik) }));
    }
    if !subset(&strong, &pow) {
        broken.push(json!({ "check": "strong-in-powerful" }));
    }
    if !subset(&pow, &standard) {
        broken.push(json!({ "check": "powerful-in-standard" }));
    }
    let mut engine = Hikita::new(&ctx.m);
    for t in &hik {
        let lhs = QPoly::q_pow(inv_p(p, t) + ctx.m.weight());
        let rhs = engine.zeta(t)?.shift(lambda.star());
        if lhs != rhs {
            broken.push(json!({ "check": "inv-zeta", "tableau": t.to_string() }));
        }
    }
    let sum_strong = inv_generating_function(p, &strong);
    let sum_pow = inv_generating_function(p, &pow);
    if greedy_shape_family_all(p).contains(lambda) {
        checked.push("greedy-family");
        if sum_strong != c {
            broken.push(json!({ "check": "greedy-family", "strong": poly_json(&sum_strong), "c": poly_json(&c) }));
        }
    }
    if n >= 5 && lambda.parts() == [n - 2, 2] {
        checked.push("two-row");
        let sum_k = inv_generating_function(p, &k_set(p)?);
        if sum_k != c {
            broken.push(json!({ "check": "two-row", "k": poly_json(&sum_k), "c": poly_json(&c) }));
        }
    }
    if ctx.m == ReverseHessenberg::path(n) {
        checked.push("path");
        if sum_pow != c {
            broken.push(json!({ "check": "path", "powerful": poly_json(&sum_pow), "c": poly_json(&c) }));
        }
    }
    if p.classify().is_3_free && lambda.len() <= 2 {
        checked.push("three-free");
        if sum_pow != c {
            broken.push(json!({ "check": "three-free", "powerful": poly_json(&sum_pow), "c": poly_json(&c) }));
        }
    }
    let detail = json!({ "checked": checked });
    if broken.is_empty() {
        Ok(Outcome::holds().with_detail(detail))
    } else {
        Ok(Outcome::fails(json!(broken)).with_detail(detail))
    }
}
