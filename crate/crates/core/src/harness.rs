//! The verification suite: a battery of named structural checks, each run
//! per ring with explicit hypothesis gating, exact verdicts, replayable
//! witnesses, and a deterministic report.
//!
//! A check never runs when one of its hypotheses fails on the ring at hand;
//! it reports SKIPPED together with the failing hypotheses, so no verdict is
//! ever vacuous. Guards surface as GUARD_EXCEEDED, failures carry the ring
//! document plus the offending data, and identical corpus + config + seeds
//! produce byte-identical reports (timings never enter the report).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::abnormal::{self, CriterionOutcome};
use crate::construct::quotient;
use crate::corpus::{self, FamilySpec};
use crate::engel;
use crate::error::{Error, Result};
use crate::format::RingFile;
use crate::frattini;
use crate::inner;
use crate::ring::{LieRing, SubringView};
use crate::subspace::Subspace;

/// Identifier of a registered check. `Validate` runs first on every ring;
/// the numbered checks are the structural statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    Validate,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
}

pub const THEOREM_CHECKS: [CheckId; 12] = [
    CheckId::T1,
    CheckId::T2,
    CheckId::T3,
    CheckId::T4,
    CheckId::T5,
    CheckId::T6,
    CheckId::T7,
    CheckId::T8,
    CheckId::T9,
    CheckId::T10,
    CheckId::T11,
    CheckId::T12,
];

impl CheckId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Validate => "validate",
            CheckId::T1 => "T1",
            CheckId::T2 => "T2",
            CheckId::T3 => "T3",
            CheckId::T4 => "T4",
            CheckId::T5 => "T5",
            CheckId::T6 => "T6",
            CheckId::T7 => "T7",
            CheckId::T8 => "T8",
            CheckId::T9 => "T9",
            CheckId::T10 => "T10",
            CheckId::T11 => "T11",
            CheckId::T12 => "T12",
        }
    }

    /// One-line statement of what the check verifies.
    pub fn label(&self) -> &'static str {
        match self {
            CheckId::Validate => "structure table satisfies the Lie ring axioms",
            CheckId::T1 => "minimal def-abnormal = Cartan = Engel-minimal",
            CheckId::T2 => "complement decomposition g = g' (+) c and conjugacy of complements",
            CheckId::T3 => "Frattini subring is a nilpotent ideal",
            CheckId::T4 => "Fitting subring equals the ad-nilpotent elements",
            CheckId::T5 => "Engel sets commute with quotients",
            CheckId::T6 => "Cartan subrings are their own Engel sets",
            CheckId::T7 => "nilpotent iff ideal and quotient mod its derived are",
            CheckId::T8 => "abnormality: quotient correspondence, transitivity, criterion",
            CheckId::T9 => "nilpotent def-abnormal subrings form one inner orbit",
            CheckId::T10 => "proper def-abnormal subrings exist",
            CheckId::T11 => "derived subring is nilpotent when char > dim",
            CheckId::T12 => {
                "Frattini non-generation and argument; fixed points of nilpotent actions"
            }
        }
    }

    /// Finite-model conventions the check relies on: quantifiers over
    /// definable subobjects range over all subspaces, and connectedness
    /// hypotheses are read as the whole object.
    pub fn model_note(&self) -> &'static str {
        match self {
            CheckId::Validate => "",
            CheckId::T1 | CheckId::T8 | CheckId::T9 | CheckId::T10 => {
                "def-abnormality quantifies over all subrings of the finite carrier"
            }
            CheckId::T2 => "irreducibility means no proper nonzero invariant subspace",
            CheckId::T3 | CheckId::T12 => {
                "all maximal subrings are intersected; connectedness has no finite content"
            }
            _ => "finite carrier: dimension stands in for rank",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [CheckId::Validate]
            .into_iter()
            .chain(THEOREM_CHECKS)
            .find(|c| c.as_str().eq_ignore_ascii_case(s));
        all.ok_or_else(|| Error::InvalidSpec(format!("unknown check id '{s}'")))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

/// Enumeration guards. Lattice scans are bounded by `subspace_guard`,
/// element scans by `element_guard`, group closures by `group_cap`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Config {
    pub subspace_guard: u64,
    pub element_guard: u64,
    pub group_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            subspace_guard: 200_000,
            element_guard: 100_000,
            group_cap: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
    #[serde(rename = "GUARD_EXCEEDED")]
    GuardExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
            Verdict::GuardExceeded => "GUARD_EXCEEDED",
        })
    }
}

/// Replayable failure data: the ring document plus the offending subring,
/// element or pair in printable form.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub ring: RingFile,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub ring: String,
    pub check: CheckId,
    pub verdict: Verdict,
    /// Names of the hypotheses that failed, when skipped.
    pub failed_hypotheses: Vec<String>,
    pub detail: String,
    pub witness: Option<Witness>,
    /// Wall time, excluded from reports to keep them byte-identical.
    #[serde(skip)]
    pub millis: u128,
}

impl CheckOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcomes serialize")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub name: String,
    pub outcomes: Vec<CheckOutcome>,
}

/// What a check verifies and the finite-model conventions it reads its
/// statement under; listed once in the report header.
#[derive(Debug, Clone, Serialize)]
pub struct CheckNote {
    pub check: CheckId,
    pub label: &'static str,
    pub convention: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: Config,
    pub checks: Vec<CheckNote>,
    pub rings: Vec<RingReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut totals = [0usize; 4];
        for ring in &self.rings {
            out.push_str(&format!("ring {}\n", ring.name));
            for o in &ring.outcomes {
                let idx = match o.verdict {
                    Verdict::Pass => 0,
                    Verdict::Fail => 1,
                    Verdict::Skipped => 2,
                    Verdict::GuardExceeded => 3,
                };
                totals[idx] += 1;
                out.push_str(&format!(
                    "  {:<9} {:<14} {}",
                    o.check.as_str(),
                    o.verdict.to_string(),
                    o.detail
                ));
                if !o.failed_hypotheses.is_empty() {
                    out.push_str(&format!(" [unmet: {}]", o.failed_hypotheses.join(", ")));
                }
                out.push('\n');
                if let Some(w) = &o.witness {
                    out.push_str(&format!("            witness: {}\n", w.detail));
                }
            }
        }
        out.push_str(&format!(
            "totals: {} pass, {} fail, {} skipped, {} guard-exceeded\n",
            totals[0], totals[1], totals[2], totals[3]
        ));
        out
    }

    /// 0 when everything passed or was skipped, 1 on any failure, 3 when a
    /// guard was exceeded without failures.
    pub fn exit_code(&self) -> i32 {
        let outcomes = self.rings.iter().flat_map(|r| &r.outcomes);
        let mut guard = false;
        for o in outcomes {
            match o.verdict {
                Verdict::Fail => return 1,
                Verdict::GuardExceeded => guard = true,
                _ => {}
            }
        }
        if guard {
            3
        } else {
            0
        }
    }
}

/// Named hypotheses a check is gated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Hypothesis {
    Soluble,
    NonNilpotent,
    CharExceedsDim,
    DerivedNilpotent,
    DerivedAbelian,
    DerivedIrreducible,
    DerivedEngelPMinusOne,
}

impl Hypothesis {
    fn name(&self) -> &'static str {
        match self {
            Hypothesis::Soluble => "soluble",
            Hypothesis::NonNilpotent => "non-nilpotent",
            Hypothesis::CharExceedsDim => "char > dim",
            Hypothesis::DerivedNilpotent => "derived subring nilpotent",
            Hypothesis::DerivedAbelian => "derived subring abelian",
            Hypothesis::DerivedIrreducible => "derived subring irreducible",
            Hypothesis::DerivedEngelPMinusOne => "derived subring (p-1)-Engel",
        }
    }

    fn eval(&self, g: &LieRing, cfg: &Config) -> Result<bool> {
        let full = g.full_space();
        Ok(match self {
            Hypothesis::Soluble => g.is_soluble(&full),
            Hypothesis::NonNilpotent => !g.is_nilpotent(&full),
            Hypothesis::CharExceedsDim => g.p() > g.dim() as u64,
            Hypothesis::DerivedNilpotent => g.is_nilpotent(g.derived_subring().space()),
            Hypothesis::DerivedAbelian => g.is_abelian(g.derived_subring().space()),
            Hypothesis::DerivedIrreducible => {
                crate::construct::is_irreducible_module(g, g.derived_subring().space())
            }
            Hypothesis::DerivedEngelPMinusOne => inner::is_k_engel(
                g,
                g.derived_subring().space(),
                (g.p() - 1) as usize,
                cfg.element_guard,
            )?,
        })
    }
}

fn hypotheses(id: CheckId) -> &'static [Hypothesis] {
    use Hypothesis::*;
    match id {
        CheckId::Validate | CheckId::T7 | CheckId::T12 => &[],
        CheckId::T1 | CheckId::T4 | CheckId::T5 | CheckId::T6 | CheckId::T11 => {
            &[Soluble, CharExceedsDim]
        }
        CheckId::T2 => &[NonNilpotent, DerivedAbelian, DerivedIrreducible],
        CheckId::T3 | CheckId::T8 => &[Soluble, DerivedNilpotent],
        CheckId::T9 => &[Soluble, DerivedEngelPMinusOne],
        CheckId::T10 => &[Soluble, NonNilpotent, DerivedNilpotent],
    }
}

/// Result of a check body: pass/fail with detail and optional witness data.
struct BodyResult {
    pass: bool,
    detail: String,
    witness: Option<String>,
}

impl BodyResult {
    fn pass(detail: impl Into<String>) -> Self {
        BodyResult {
            pass: true,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(detail: impl Into<String>, witness: impl Into<String>) -> Self {
        BodyResult {
            pass: false,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }
}

fn basis_list(s: &Subspace) -> String {
    format!("{:?}", s.basis_rows())
}

fn sorted_spaces(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort();
    v
}

/// Lattice size below which checks quantify over every ideal.
const EXHAUSTIVE_LATTICE_LIMIT: u128 = 512;

/// The ideals a statement is instantiated at: the whole ideal lattice when
/// it is small enough, otherwise the series and minimal ideals (the
/// instances the statements get applied to). The flag says which mode was
/// used so the report can record it.
fn ideal_family<'g>(
    g: &'g LieRing,
    cfg: &Config,
) -> Result<(Vec<crate::ring::IdealView<'g>>, bool)> {
    if crate::subspace::subspace_count(g.dim(), g.p()) <= EXHAUSTIVE_LATTICE_LIMIT {
        Ok((
            abnormal::enumerate_ideals(g, &g.zero_space(), cfg.subspace_guard)?,
            true,
        ))
    } else {
        let mut spaces: Vec<Subspace> = g
            .series_ideals()
            .into_iter()
            .map(|i| i.into_space())
            .collect();
        spaces.extend(
            g.minimal_ideals(cfg.element_guard)?
                .into_iter()
                .map(|i| i.into_space()),
        );
        spaces.sort();
        spaces.dedup();
        Ok((
            spaces
                .into_iter()
                .map(|s| g.ideal(s).expect("family members are ideals"))
                .collect(),
            false,
        ))
    }
}

fn family_mode(exhaustive: bool) -> &'static str {
    if exhaustive {
        "all ideals"
    } else {
        "series and minimal ideals"
    }
}

/// Run one registered check on one ring.
pub fn run_check(g: &LieRing, id: CheckId, cfg: &Config) -> CheckOutcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut guard_hit: Option<Error> = None;
    for h in hypotheses(id) {
        match h.eval(g, cfg) {
            Ok(true) => {}
            Ok(false) => failed.push(h.name().to_string()),
            Err(e) if e.is_guard_exceeded() => {
                guard_hit = Some(e);
                break;
            }
            Err(e) => {
                guard_hit = Some(e);
                break;
            }
        }
    }
    let outcome = if let Some(e) = guard_hit {
        CheckOutcome {
            ring: g.name().to_string(),
            check: id,
            verdict: if e.is_guard_exceeded() {
                Verdict::GuardExceeded
            } else {
                Verdict::Fail
            },
            failed_hypotheses: Vec::new(),
            detail: format!("hypothesis evaluation: {e}"),
            witness: None,
            millis: 0,
        }
    } else if !failed.is_empty() {
        CheckOutcome {
            ring: g.name().to_string(),
            check: id,
            verdict: Verdict::Skipped,
            failed_hypotheses: failed,
            detail: "hypotheses not satisfied".into(),
            witness: None,
            millis: 0,
        }
    } else {
        let body = match id {
            CheckId::Validate => check_validate(g),
            CheckId::T1 => check_t1(g, cfg),
            CheckId::T2 => check_t2(g, cfg),
            CheckId::T3 => check_t3(g, cfg),
            CheckId::T4 => check_t4(g, cfg),
            CheckId::T5 => check_t5(g, cfg),
            CheckId::T6 => check_t6(g, cfg),
            CheckId::T7 => check_t7(g, cfg),
            CheckId::T8 => check_t8(g, cfg),
            CheckId::T9 => check_t9(g, cfg),
            CheckId::T10 => check_t10(g, cfg),
            CheckId::T11 => check_t11(g, cfg),
            CheckId::T12 => check_t12(g, cfg),
        };
        match body {
            Ok(res) => CheckOutcome {
                ring: g.name().to_string(),
                check: id,
                verdict: if res.pass {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                failed_hypotheses: Vec::new(),
                detail: res.detail,
                witness: res.witness.map(|detail| Witness {
                    ring: RingFile::from_ring(g),
                    detail,
                }),
                millis: 0,
            },
            Err(e) if e.is_guard_exceeded() => CheckOutcome {
                ring: g.name().to_string(),
                check: id,
                verdict: Verdict::GuardExceeded,
                failed_hypotheses: Vec::new(),
                detail: e.to_string(),
                witness: None,
                millis: 0,
            },
            Err(e) => CheckOutcome {
                ring: g.name().to_string(),
                check: id,
                verdict: Verdict::Fail,
                failed_hypotheses: Vec::new(),
                detail: format!("check aborted: {e}"),
                witness: Some(Witness {
                    ring: RingFile::from_ring(g),
                    detail: e.to_string(),
                }),
                millis: 0,
            },
        }
    };
    CheckOutcome {
        millis: start.elapsed().as_millis(),
        ..outcome
    }
}

fn check_validate(g: &LieRing) -> Result<BodyResult> {
    Ok(match g.validate() {
        Ok(()) => BodyResult::pass("alternating, anti-symmetric, Jacobi"),
        Err(v) => BodyResult::fail("structure table violates the axioms", v.to_string()),
    })
}

fn check_t1(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let mixed_guard = cfg.subspace_guard.max(cfg.element_guard);
    let min_ab = sorted_spaces(
        abnormal::minimal_def_abnormal(g, cfg.subspace_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .collect(),
    );
    let cartan = sorted_spaces(
        engel::cartan_subrings_exhaustive(g, cfg.subspace_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .collect(),
    );
    let engel_min = sorted_spaces(
        engel::engel_minimal_subrings(g, mixed_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .collect(),
    );
    if min_ab == cartan && cartan == engel_min {
        Ok(BodyResult::pass(format!(
            "all three sets coincide ({} subrings): {:?}",
            cartan.len(),
            cartan.iter().map(basis_list).collect::<Vec<_>>()
        )))
    } else {
        Ok(BodyResult::fail(
            "the three subring sets differ",
            format!(
                "minimal def-abnormal: {:?}; Cartan: {:?}; Engel-minimal: {:?}",
                min_ab.iter().map(basis_list).collect::<Vec<_>>(),
                cartan.iter().map(basis_list).collect::<Vec<_>>(),
                engel_min.iter().map(basis_list).collect::<Vec<_>>()
            ),
        ))
    }
}

fn check_t2(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let gp = g.derived_subring().space().clone();
    let complements: Vec<Subspace> =
        abnormal::enumerate_subrings(g, &g.zero_space(), cfg.subspace_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .filter(|s| {
                s.dim() + gp.dim() == g.dim() && s.intersect(&gp).is_ok_and(|m| m.is_zero())
            })
            .collect();
    let cartan_complement = complements.iter().find(|c| engel::is_cartan(g, c));
    let Some(c0) = cartan_complement else {
        return Ok(BodyResult::fail(
            "no Cartan complement of the derived subring",
            format!("complements found: {}", complements.len()),
        ));
    };
    let mut detail = format!(
        "{} complement(s); Cartan complement {}",
        complements.len(),
        basis_list(c0)
    );
    let center = g.center().space().clone();
    if center.is_zero() {
        let group = inner::inner_group(g, &gp, cfg.group_cap)?;
        for a in &complements {
            if inner::are_conjugate(g, c0, a, &group).is_none() {
                return Ok(BodyResult::fail(
                    "complements are not all conjugate",
                    format!("{} vs {}", basis_list(c0), basis_list(a)),
                ));
            }
            for x in a.vectors(cfg.element_guard)? {
                if center.contains(&x) {
                    continue;
                }
                if &g.centralizer_of_element(&x) != a {
                    return Ok(BodyResult::fail(
                        "a complement is not the centralizer of its non-central element",
                        format!("complement {}, element {x:?}", basis_list(a)),
                    ));
                }
            }
        }
        detail.push_str("; all complements conjugate and equal to element centralizers");
    } else {
        detail.push_str("; conjugacy clause not applicable (nonzero center)");
    }
    Ok(BodyResult::pass(detail))
}

fn check_t3(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let f = frattini::frattini(g, cfg.subspace_guard)?;
    if f.is_ideal && f.is_nilpotent {
        Ok(BodyResult::pass(format!(
            "Frattini subring has dim {}, nilpotent ideal",
            f.space.dim()
        )))
    } else {
        Ok(BodyResult::fail(
            format!(
                "Frattini subring flags: ideal={}, nilpotent={}",
                f.is_ideal, f.is_nilpotent
            ),
            basis_list(&f.space),
        ))
    }
}

fn check_t4(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let f = engel::fitting(g, cfg.element_guard)?;
    if !f.all_verified() {
        return Ok(BodyResult::fail(
            format!(
                "ad-nilpotent set flags: subspace={}, ideal={}, nilpotent={}",
                f.is_subspace, f.is_ideal, f.is_nilpotent
            ),
            basis_list(&f.space),
        ));
    }
    // Largest nilpotent ideal: every nilpotent ideal must sit inside it.
    for i in abnormal::enumerate_ideals(g, &g.zero_space(), cfg.subspace_guard)? {
        if g.is_nilpotent(i.space()) && !i.space().is_subspace_of(&f.space) {
            return Ok(BodyResult::fail(
                "a nilpotent ideal escapes the ad-nilpotent set",
                basis_list(i.space()),
            ));
        }
    }
    Ok(BodyResult::pass(format!(
        "ad-nilpotent elements form the largest nilpotent ideal, dim {}",
        f.space.dim()
    )))
}

fn check_t5(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let nilpotent_subrings: Vec<Subspace> =
        abnormal::enumerate_subrings(g, &g.zero_space(), cfg.subspace_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .filter(|s| g.is_nilpotent(s))
            .collect();
    let mut ambient_cache = engel::EngelElementCache::default();
    let mut instances = 0;
    for ideal in g.series_ideals() {
        let (q, map) = quotient(g, &ideal);
        let mut quotient_cache = engel::EngelElementCache::default();
        for h in &nilpotent_subrings {
            let h_image = map.project_space(h);
            let lhs = quotient_cache.engel_of_subring(&q, &h_image, cfg.element_guard)?;
            let rhs =
                map.project_space(&ambient_cache.engel_of_subring(g, h, cfg.element_guard)?);
            if lhs != rhs {
                return Ok(BodyResult::fail(
                    "Engel set does not commute with the quotient",
                    format!(
                        "ideal {}, subring {}: quotient side {}, projected side {}",
                        basis_list(ideal.space()),
                        basis_list(h),
                        basis_list(&lhs),
                        basis_list(&rhs)
                    ),
                ));
            }
            instances += 1;
        }
    }
    Ok(BodyResult::pass(format!(
        "{instances} (ideal, nilpotent subring) instances agree"
    )))
}

fn check_t6(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let cartans = engel::cartan_subrings_exhaustive(g, cfg.subspace_guard)?;
    let count = cartans.len();
    for c in cartans {
        let e = engel::engel_subring(g, c.space(), cfg.element_guard)?.space;
        if &e != c.space() {
            return Ok(BodyResult::fail(
                "a Cartan subring is not its own Engel set",
                format!(
                    "cartan {}, engel set {}",
                    basis_list(c.space()),
                    basis_list(&e)
                ),
            ));
        }
    }
    Ok(BodyResult::pass(format!("{count} Cartan subring(s) fixed")))
}

fn check_t7(g: &LieRing, _cfg: &Config) -> Result<BodyResult> {
    let g_nilpotent = g.is_nilpotent(&g.full_space());
    let mut instances = 0;
    for ideal in g.series_ideals() {
        let iprime = g.derived(ideal.space(), ideal.space());
        let iprime_view = g.ideal(iprime).expect("derived of an ideal is an ideal");
        let (q, _) = quotient(g, &iprime_view);
        let rhs = g.is_nilpotent(ideal.space()) && q.is_nilpotent(&q.full_space());
        if g_nilpotent != rhs {
            return Ok(BodyResult::fail(
                "nilpotency criterion disagrees",
                format!(
                    "ideal {}: ring nilpotent = {g_nilpotent}, ideal and reduced quotient nilpotent = {rhs}",
                    basis_list(ideal.space())
                ),
            ));
        }
        instances += 1;
    }
    Ok(BodyResult::pass(format!(
        "both directions agree on {instances} series ideal(s)"
    )))
}

fn check_t8(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let sguard = cfg.subspace_guard;
    let subrings = abnormal::enumerate_subrings(g, &g.zero_space(), sguard)?;
    let def_ab: Vec<Subspace> = sorted_spaces(
        abnormal::def_abnormal_subrings(g, sguard)?
            .into_iter()
            .map(|s| s.into_space())
            .collect(),
    );
    let is_def_ab = |s: &Subspace| def_ab.binary_search(s).is_ok();

    // Quotient correspondence: for b = a + I, def-abnormality downstairs
    // matches def-abnormality of the image. The sums a + I are exactly the
    // subrings containing I, so those are what gets iterated.
    let (ideals, exhaustive) = ideal_family(g, cfg)?;
    let mut correspondence = 0;
    for ideal in &ideals {
        let (q, map) = quotient(g, ideal);
        let q_def_ab: Vec<Subspace> = sorted_spaces(
            abnormal::def_abnormal_subrings(&q, sguard)?
                .into_iter()
                .map(|s| s.into_space())
                .collect(),
        );
        for b in subrings
            .iter()
            .map(SubringView::space)
            .filter(|s| ideal.space().is_subspace_of(s))
        {
            let image = map.project_space(b);
            let lhs = is_def_ab(b);
            let rhs = q_def_ab.binary_search(&image).is_ok();
            if lhs != rhs {
                return Ok(BodyResult::fail(
                    "def-abnormality does not correspond across the quotient",
                    format!(
                        "ideal {}, subring {}: ambient {lhs}, quotient {rhs}",
                        basis_list(ideal.space()),
                        basis_list(b)
                    ),
                ));
            }
            correspondence += 1;
        }
    }

    // Transitivity: def-abnormal inside a def-abnormal subring is
    // def-abnormal in the ambient ring.
    let mut transitivity = 0;
    for a in &def_ab {
        let view = g
            .subring(a.clone())
            .expect("def-abnormal sets are subrings");
        let (s, basis) = crate::construct::subring_as_ring(g, &view);
        for h in abnormal::def_abnormal_subrings(&s, sguard)? {
            let rows: Vec<Vec<u64>> = h
                .space()
                .basis_rows()
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; g.dim()];
                    for (i, &ci) in coords.iter().enumerate() {
                        for j in 0..g.dim() {
                            v[j] = crate::fp::add_m(
                                v[j],
                                crate::fp::mul_m(ci, basis.get(i, j), g.p()),
                                g.p(),
                            );
                        }
                    }
                    v
                })
                .collect();
            let h_ambient = Subspace::from_rows(g.dim(), g.p(), &rows);
            if !is_def_ab(&h_ambient) {
                return Ok(BodyResult::fail(
                    "transitivity fails",
                    format!(
                        "subring {} def-abnormal inside {}, not in the ambient ring",
                        basis_list(&h_ambient),
                        basis_list(a)
                    ),
                ));
            }
            transitivity += 1;
        }
    }

    // Minimal-ideal criterion on every (minimal ideal, subring) pair whose
    // hypotheses hold.
    let mut criterion_checked = 0;
    let mut criterion_skipped = 0;
    for ideal in g.minimal_ideals(cfg.element_guard)? {
        for h in &subrings {
            match abnormal::criterion_check(g, &ideal, h, sguard)? {
                CriterionOutcome::Holds => criterion_checked += 1,
                CriterionOutcome::Skipped(_) => criterion_skipped += 1,
                CriterionOutcome::Fails(w) => {
                    return Ok(BodyResult::fail(
                        "minimal-ideal abnormality criterion fails",
                        format!(
                            "ideal {}, subring {}, witness {}",
                            basis_list(ideal.space()),
                            basis_list(h.space()),
                            basis_list(&w)
                        ),
                    ));
                }
            }
        }
    }

    Ok(BodyResult::pass(format!(
        "correspondence on {correspondence} pairs over {}, transitivity on {transitivity}, criterion on {criterion_checked} (skipped {criterion_skipped})",
        family_mode(exhaustive)
    )))
}

fn check_t9(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let nilpotent_ab: Vec<Subspace> = abnormal::def_abnormal_subrings(g, cfg.subspace_guard)?
        .into_iter()
        .map(|s| s.into_space())
        .filter(|s| g.is_nilpotent(s))
        .collect();
    if nilpotent_ab.len() <= 1 {
        return Ok(BodyResult::pass(format!(
            "{} nilpotent def-abnormal subring(s), orbit condition vacuous",
            nilpotent_ab.len()
        )));
    }
    let group = inner::inner_group(g, g.derived_subring().space(), cfg.group_cap)?;
    let first = &nilpotent_ab[0];
    for other in &nilpotent_ab[1..] {
        if inner::are_conjugate(g, first, other, &group).is_none() {
            return Ok(BodyResult::fail(
                "nilpotent def-abnormal subrings split into several orbits",
                format!("{} vs {}", basis_list(first), basis_list(other)),
            ));
        }
    }
    Ok(BodyResult::pass(format!(
        "{} subrings in one orbit of a {}-element group",
        nilpotent_ab.len(),
        group.len()
    )))
}

fn check_t10(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    let proper: Vec<Subspace> = abnormal::def_abnormal_subrings(g, cfg.subspace_guard)?
        .into_iter()
        .map(|s| s.into_space())
        .filter(|s| !s.is_full())
        .collect();
    if proper.is_empty() {
        return Ok(BodyResult::fail(
            "no proper def-abnormal subring",
            "the only def-abnormal subring is the whole ring".to_string(),
        ));
    }
    // The constructive route must verify as well: a centerless quotient
    // with abelian irreducible derived subring.
    let iq = abnormal::irreducible_quotient(g, cfg.subspace_guard)?;
    if !iq.all_verified() {
        return Ok(BodyResult::fail(
            "irreducible-quotient construction failed verification",
            format!(
                "ideal {}; centerless={}, derived abelian={}, derived irreducible={}, non-nilpotent={}",
                basis_list(&iq.ideal),
                iq.centerless,
                iq.derived_abelian,
                iq.derived_irreducible,
                iq.non_nilpotent
            ),
        ));
    }
    Ok(BodyResult::pass(format!(
        "{} proper def-abnormal subring(s); quotient by {}-dim ideal verified",
        proper.len(),
        iq.ideal.dim()
    )))
}

fn check_t11(g: &LieRing, _cfg: &Config) -> Result<BodyResult> {
    let gp = g.derived_subring();
    if g.is_nilpotent(gp.space()) {
        Ok(BodyResult::pass(format!(
            "derived subring of dim {} is nilpotent",
            gp.dim()
        )))
    } else {
        Ok(BodyResult::fail(
            "derived subring is not nilpotent",
            basis_list(gp.space()),
        ))
    }
}

fn check_t12(g: &LieRing, cfg: &Config) -> Result<BodyResult> {
    if let Some(h) = frattini::frattini_fact_check(g, cfg.subspace_guard)? {
        return Ok(BodyResult::fail(
            "a proper subring joins with the Frattini subring to everything",
            basis_list(&h),
        ));
    }
    for ideal in g.series_ideals() {
        if let Some(c) = frattini::frattini_argument_check(g, &ideal, cfg.subspace_guard)? {
            return Ok(BodyResult::fail(
                "normalizer of a Cartan subring of an ideal does not complement it",
                format!(
                    "ideal {}, cartan {}",
                    basis_list(ideal.space()),
                    basis_list(&c)
                ),
            ));
        }
    }

    // Fixed points of nilpotent actions: a nilpotent subring acting
    // V-nilpotently on a nonzero abelian ideal V with p > dim V + dim h
    // must centralize a nonzero part of V. Subrings inside the center pass
    // immediately (they act trivially); otherwise V-nilpotency is decided
    // against a per-module set of elements that act nilpotently.
    let mut fixed_point_instances = 0;
    let center = g.center().space().clone();
    let nilpotent_subrings: Vec<Subspace> =
        abnormal::enumerate_subrings(g, &g.zero_space(), cfg.subspace_guard)?
            .into_iter()
            .map(|s| s.into_space())
            .filter(|s| g.is_nilpotent(s))
            .collect();
    let mut subring_vectors: Vec<Option<Vec<Vec<u64>>>> = vec![None; nilpotent_subrings.len()];
    let mut subring_centralizers: Vec<Option<Subspace>> = vec![None; nilpotent_subrings.len()];
    let (modules, exhaustive) = ideal_family(g, cfg)?;
    for v in &modules {
        if v.dim() == 0 || !g.is_abelian(v.space()) {
            continue;
        }
        let mut nilpotent_on_v: Option<std::collections::HashSet<Vec<u64>>> = None;
        for (hi, h) in nilpotent_subrings.iter().enumerate() {
            if g.p() <= (v.dim() + h.dim()) as u64 {
                continue;
            }
            let central = h.is_subspace_of(&center);
            if !central {
                let good = match &nilpotent_on_v {
                    Some(set) => set,
                    None => {
                        let mut set = std::collections::HashSet::new();
                        for x in g.full_space().vectors(cfg.element_guard)? {
                            if acts_nilpotently(g, &x, v.space()) {
                                set.insert(x);
                            }
                        }
                        nilpotent_on_v.insert(set)
                    }
                };
                let vectors = subring_vectors[hi].get_or_insert(h.vectors(cfg.element_guard)?);
                if !vectors.iter().all(|x| good.contains(x)) {
                    continue;
                }
            }
            let fixed = if central {
                v.space().clone()
            } else {
                let c_h = subring_centralizers[hi].get_or_insert_with(|| g.centralizer(h));
                c_h.intersect(v.space())?
            };
            if fixed.is_zero() {
                return Ok(BodyResult::fail(
                    "nilpotent action has no nonzero fixed vector",
                    format!(
                        "module {}, subring {}",
                        basis_list(v.space()),
                        basis_list(h)
                    ),
                ));
            }
            fixed_point_instances += 1;
        }
    }
    Ok(BodyResult::pass(format!(
        "non-generation and argument hold; {fixed_point_instances} fixed-point instance(s) over {}",
        family_mode(exhaustive)
    )))
}

/// Does ad_x act nilpotently on the invariant subspace V?
fn acts_nilpotently(g: &LieRing, x: &[u64], v: &Subspace) -> bool {
    let power = g.ad(x).pow(v.dim().max(1));
    v.basis_rows().iter().all(|b| {
        let img = power.mul_vec(b);
        img.iter().all(|&c| c == 0)
    })
}

/// Run validation and every registered check on one ring. When validation
/// fails, the numbered checks are reported as skipped on that ground.
pub fn run_all_checks(g: &LieRing, cfg: &Config) -> Vec<CheckOutcome> {
    let mut outcomes = vec![run_check(g, CheckId::Validate, cfg)];
    let valid = outcomes[0].verdict == Verdict::Pass;
    for id in THEOREM_CHECKS {
        if valid {
            outcomes.push(run_check(g, id, cfg));
        } else {
            outcomes.push(CheckOutcome {
                ring: g.name().to_string(),
                check: id,
                verdict: Verdict::Skipped,
                failed_hypotheses: vec!["valid structure table".into()],
                detail: "ring failed validation".into(),
                witness: None,
                millis: 0,
            });
        }
    }
    outcomes
}

/// Run the suite over generated family specs.
pub fn verify_suite(specs: &[FamilySpec], cfg: &Config) -> Result<Report> {
    let mut rings = Vec::new();
    for spec in specs {
        rings.push(corpus::generate(spec)?);
    }
    Ok(verify_rings(&rings, cfg))
}

/// Run the suite over explicit rings (e.g. loaded from files).
pub fn verify_rings(rings: &[LieRing], cfg: &Config) -> Report {
    let ring_reports = rings
        .iter()
        .map(|g| RingReport {
            name: g.name().to_string(),
            outcomes: run_all_checks(g, cfg),
        })
        .collect();
    let checks = [CheckId::Validate]
        .into_iter()
        .chain(THEOREM_CHECKS)
        .map(|check| CheckNote {
            check,
            label: check.label(),
            convention: check.model_note(),
        })
        .collect();
    Report {
        config: *cfg,
        checks,
        rings: ring_reports,
    }
}
