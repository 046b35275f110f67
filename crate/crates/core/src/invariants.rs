//! Degree invariants of a system and certificates for the bounds relating them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_reduced_with, ideal_dim_le, BuchbergerOptions, GroebnerBasis};
use crate::linalg::RowBasis;
use crate::monomial::{binomial, enumerate_monomials, DegreeMode, TermOrder};
use crate::poly::PolySystem;
use crate::vspace::{v_space_closure_with, ClosureOptions, VSpaceBasis};

/// Degree of regularity: finite, or "not reached up to `cap`".
///
/// Serializes as a bare integer when finite and as
/// `{"infinite": true, "cap": c}` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DregRepr", try_from = "DregRepr")]
pub enum Dreg {
    Finite(u32),
    Infinite { cap: u32 },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DregRepr {
    Finite(u32),
    Infinite { infinite: bool, cap: u32 },
}

impl From<Dreg> for DregRepr {
    fn from(d: Dreg) -> Self {
        match d {
            Dreg::Finite(d) => DregRepr::Finite(d),
            Dreg::Infinite { cap } => DregRepr::Infinite { infinite: true, cap },
        }
    }
}

impl TryFrom<DregRepr> for Dreg {
    type Error = String;

    fn try_from(r: DregRepr) -> std::result::Result<Self, String> {
        match r {
            DregRepr::Finite(d) => Ok(Dreg::Finite(d)),
            DregRepr::Infinite { infinite: true, cap } => Ok(Dreg::Infinite { cap }),
            DregRepr::Infinite { .. } => Err("`infinite` must be true".into()),
        }
    }
}

impl Dreg {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Dreg::Finite(d) => Some(*d),
            Dreg::Infinite { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dreg::Finite(_))
    }
}

impl fmt::Display for Dreg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dreg::Finite(d) => write!(f, "{d}"),
            Dreg::Infinite { cap } => write!(f, "inf (> {cap})"),
        }
    }
}

fn sorted_degrees_desc(system: &PolySystem) -> Vec<u32> {
    let mut degs = system.degrees();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    degs
}

/// `d_1 + ... + d_t - n + 1` over the `t` largest degrees, floored at 0.
fn macaulay_sum(system: &PolySystem, t: usize) -> u32 {
    let n = system.ring().nvars() as i64;
    let s: i64 = sorted_degrees_desc(system).iter().take(t).map(|&d| d as i64).sum();
    (s - n + 1).max(0) as u32
}

/// Default search cap for `d_reg`: the Macaulay value over the `n` largest
/// degrees, plus two.
pub fn default_dreg_cap(system: &PolySystem) -> u32 {
    let n = system.ring().nvars();
    macaulay_sum(system, n).max(system.max_degree()).max(1) + 2
}

/// Default cap for the solving-degree search.
pub fn default_degree_cap(system: &PolySystem, dreg: Dreg, gbd: u32) -> u32 {
    match dreg {
        Dreg::Finite(d) => (d + 1).max(system.max_degree()),
        Dreg::Infinite { .. } => {
            let n = system.ring().nvars();
            macaulay_sum(system, n + 1).max(system.max_degree()).max(gbd) + 2
        }
    }
}

/// Smallest `d` in `1..=cap` with `(F^top)_d` equal to all forms of degree `d`.
pub fn degree_of_regularity(system: &PolySystem, cap: u32) -> Dreg {
    let ring = system.ring();
    let n = ring.nvars();
    let tops = system.tops();
    for d in 1..=cap {
        let target = binomial(d as u64 + n as u64 - 1, d as u64) as usize;
        let mut span = RowBasis::new(ring);
        'fill: for t in &tops {
            let deg = t.degree().expect("nonzero");
            if deg > d {
                continue;
            }
            for m in enumerate_monomials(n, d - deg, DegreeMode::Exactly, ring.order()) {
                span.insert_reduce(&t.mul_monomial(&m)).expect("same ring");
                if span.span_dim() == target {
                    break 'fill;
                }
            }
        }
        if span.span_dim() == target {
            return Dreg::Finite(d);
        }
    }
    Dreg::Infinite { cap }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Cap for the `d_reg` search; defaults to [`default_dreg_cap`].
    pub dreg_cap: Option<u32>,
    /// Cap for the solving-degree search; defaults to [`default_degree_cap`].
    pub degree_cap: Option<u32>,
    pub closure: ClosureOptions,
    pub buchberger: BuchbergerOptions,
}

/// Per-degree closures, computed once each.
struct Closures<'a> {
    system: &'a PolySystem,
    opts: ClosureOptions,
    cache: BTreeMap<u32, VSpaceBasis>,
}

impl<'a> Closures<'a> {
    fn new(system: &'a PolySystem, opts: ClosureOptions) -> Self {
        Closures {
            system,
            opts,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, d: u32) -> Result<&VSpaceBasis> {
        if !self.cache.contains_key(&d) {
            let v = v_space_closure_with(self.system, d, self.opts)?;
            self.cache.insert(d, v);
        }
        Ok(&self.cache[&d])
    }
}

fn solving_degree_in(closures: &mut Closures<'_>, gb: &GroebnerBasis, cap: u32) -> Result<u32> {
    let start = gb.max_degree().max(1);
    let mut dims = Vec::new();
    for d in start..=cap {
        let v = closures.get(d)?;
        if gb.polys().iter().all(|g| v.span_contains(g)) {
            return Ok(d);
        }
        dims.push((d, v.span_dim()));
    }
    Err(Error::DegreeCapped { cap, dims })
}

/// Smallest `d` such that `V_{F,d}` contains the reduced Gröbner basis.
pub fn solving_degree(system: &PolySystem, ord: TermOrder, cap: Option<u32>) -> Result<u32> {
    let system = system.with_order(ord);
    let gb = buchberger_reduced_with(&system, ord, BuchbergerOptions::default())?;
    let cap = match cap {
        Some(c) => c,
        None => {
            let dreg = degree_of_regularity(&system, default_dreg_cap(&system));
            default_degree_cap(&system, dreg, gb.max_degree())
        }
    };
    solving_degree_in(&mut Closures::new(&system, ClosureOptions::default()), &gb, cap)
}

/// Dimension comparison at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub e: u32,
    pub v_dim: usize,
    pub ideal_dim: usize,
}

fn last_fall_in(closures: &mut Closures<'_>, gb: &GroebnerBasis, sd: u32) -> Result<(u32, Vec<DimRow>)> {
    let mut rows = Vec::new();
    let mut last_fall = None;
    for e in 1..=sd {
        let v_dim = closures.get(e)?.span_dim();
        let ideal_dim = ideal_dim_le(gb, e);
        if v_dim < ideal_dim {
            last_fall = Some(e);
        }
        rows.push(DimRow { e, v_dim, ideal_dim });
    }
    Ok((last_fall.map_or(1, |e| e + 1), rows))
}

pub const LFD_RATIONALE: &str = "lfd = 1 + max{e <= sd : dim V_{F,e} < dim (F)_{<=e}} (1 if none); \
no e > sd can qualify because V_{F,e} then contains the reduced Groebner basis and division by it \
under a degree-compatible order never exceeds degree e";

/// Last fall degree via the dimension criterion, scanning `e = 1..=sd`.
pub fn last_fall_degree(system: &PolySystem, ord: TermOrder) -> Result<u32> {
    let system = system.with_order(ord);
    let gb = buchberger_reduced_with(&system, ord, BuchbergerOptions::default())?;
    let dreg = degree_of_regularity(&system, default_dreg_cap(&system));
    let cap = default_degree_cap(&system, dreg, gb.max_degree());
    let mut closures = Closures::new(&system, ClosureOptions::default());
    let sd = solving_degree_in(&mut closures, &gb, cap)?;
    Ok(last_fall_in(&mut closures, &gb, sd)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: String,
    pub lhs: Option<u32>,
    pub rhs: Option<u32>,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

impl Certificate {
    fn le(id: &str, lhs: u32, rhs: u32) -> Self {
        Certificate {
            id: id.to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            verdict: if lhs <= rhs { Verdict::Pass } else { Verdict::Fail },
            reason: None,
        }
    }

    fn eq(id: &str, lhs: u32, rhs: u32) -> Self {
        Certificate {
            verdict: if lhs == rhs { Verdict::Pass } else { Verdict::Fail },
            ..Certificate::le(id, lhs, rhs)
        }
    }

    fn skipped(id: &str, reason: impl Into<String>) -> Self {
        Certificate {
            id: id.to_string(),
            lhs: None,
            rhs: None,
            verdict: Verdict::Skipped,
            reason: Some(reason.into()),
        }
    }

    fn unbounded(id: &str, lhs: u32) -> Self {
        Certificate {
            id: id.to_string(),
            lhs: Some(lhs),
            rhs: None,
            verdict: Verdict::Pass,
            reason: Some("d_reg is infinite, so the bound is +inf".into()),
        }
    }
}

pub mod cert {
    pub const GBD_LE_DREG: &str = "gbd_le_dreg";
    pub const SD_LE_DREG_PLUS_1: &str = "sd_le_dreg_plus_1";
    pub const SD_EQ_MAX_LFD_GBD: &str = "sd_eq_max_lfd_gbd";
    pub const SD_LE_GENERAL: &str = "sd_le_max_dreg_plus_1_and_degrees";
    pub const LFD_LE_GENERAL: &str = "lfd_le_max_dreg_plus_1_and_degrees";
    pub const SD_LE_MACAULAY: &str = "sd_le_macaulay_bound";
    pub const DIM_V_EQ_IDEAL: &str = "dim_v_eq_ideal_dim_at_dreg_plus_1";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub nvars: usize,
    pub npolys: usize,
    pub max_degree: u32,
    pub dreg_finite: bool,
    pub max_deg_le_dreg: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub d_reg: Dreg,
    pub gbd: Option<u32>,
    pub sd: Option<u32>,
    pub lfd: Option<u32>,
    pub order: TermOrder,
    pub hypothesis: Hypothesis,
    pub certificates: Vec<Certificate>,
    /// `dim V_{F,e}` against `dim (F)_{<=e}` for `e = 1..=sd`.
    pub dims: Vec<DimRow>,
    pub notes: Vec<String>,
}

impl DegreeReport {
    pub fn certificate(&self, id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id == id)
    }

    pub fn any_failed(&self) -> bool {
        self.certificates.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn any_capped(&self) -> bool {
        self.certificates
            .iter()
            .any(|c| c.verdict == Verdict::Skipped && c.reason.as_deref().is_some_and(|r| r.starts_with("cap")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn verify_bounds(system: &PolySystem, ord: TermOrder) -> DegreeReport {
    verify_bounds_with(system, ord, AnalysisOptions::default())
}

/// Computes every invariant and one certificate per bound. Caps never abort
/// the report; they turn the dependent certificates into skips.
pub fn verify_bounds_with(system: &PolySystem, ord: TermOrder, opts: AnalysisOptions) -> DegreeReport {
    let system = system.with_order(ord);
    let nvars = system.ring().nvars();
    let max_degree = system.max_degree();
    let dreg = degree_of_regularity(&system, opts.dreg_cap.unwrap_or_else(|| default_dreg_cap(&system)));
    let hypothesis = Hypothesis {
        nvars,
        npolys: system.len(),
        max_degree,
        dreg_finite: dreg.is_finite(),
        max_deg_le_dreg: dreg.finite().is_some_and(|d| max_degree <= d),
    };
    let mut notes = vec![LFD_RATIONALE.to_string()];
    let mut dims = Vec::new();
    let cap_reason = |what: &str| format!("cap: {what} not computed");
    let no_hypothesis = "hypothesis max deg <= d_reg < inf fails";

    let (gbd, sd, lfd, dim_cert) = match buchberger_reduced_with(&system, ord, opts.buchberger) {
        Err(e) => {
            notes.push(format!("Groebner basis not computed: {e}"));
            let dim_cert = Certificate::skipped(cert::DIM_V_EQ_IDEAL, cap_reason("Groebner basis"));
            (None, None, None, dim_cert)
        }
        Ok(gb) => {
            let gbd = gb.max_degree();
            let cap = opts
                .degree_cap
                .unwrap_or_else(|| default_degree_cap(&system, dreg, gbd));
            let mut closures = Closures::new(&system, opts.closure);
            let sd = match solving_degree_in(&mut closures, &gb, cap) {
                Ok(sd) => Some(sd),
                Err(e) => {
                    notes.push(format!("solving degree not computed: {e}"));
                    None
                }
            };
            let lfd = sd.and_then(|sd| match last_fall_in(&mut closures, &gb, sd) {
                Ok((lfd, rows)) => {
                    dims = rows;
                    Some(lfd)
                }
                Err(e) => {
                    notes.push(format!("last fall degree not computed: {e}"));
                    None
                }
            });
            let dim_cert = match dreg.finite() {
                Some(d) if hypothesis.max_deg_le_dreg => match closures.get(d + 1) {
                    Ok(v) => Certificate::eq(
                        cert::DIM_V_EQ_IDEAL,
                        v.span_dim() as u32,
                        ideal_dim_le(&gb, d + 1) as u32,
                    ),
                    Err(e) => Certificate::skipped(cert::DIM_V_EQ_IDEAL, format!("cap: {e}")),
                },
                _ => Certificate::skipped(cert::DIM_V_EQ_IDEAL, no_hypothesis),
            };
            (Some(gbd), sd, lfd, dim_cert)
        }
    };

    let gbd_cert = match (gbd, dreg) {
        (_, Dreg::Infinite { .. }) => Certificate::skipped(cert::GBD_LE_DREG, "d_reg is infinite"),
        (None, _) => Certificate::skipped(cert::GBD_LE_DREG, cap_reason("gbd")),
        (Some(g), Dreg::Finite(d)) => Certificate::le(cert::GBD_LE_DREG, g, d),
    };
    let main_cert = match (sd, dreg.finite()) {
        (_, Some(d)) if hypothesis.max_deg_le_dreg => match sd {
            Some(s) => Certificate::le(cert::SD_LE_DREG_PLUS_1, s, d + 1),
            None => Certificate::skipped(cert::SD_LE_DREG_PLUS_1, cap_reason("sd")),
        },
        _ => Certificate::skipped(cert::SD_LE_DREG_PLUS_1, no_hypothesis),
    };
    let identity_cert = match (sd, lfd, gbd) {
        (Some(s), Some(l), Some(g)) => Certificate::eq(cert::SD_EQ_MAX_LFD_GBD, s, l.max(g)),
        _ => Certificate::skipped(cert::SD_EQ_MAX_LFD_GBD, cap_reason("sd, lfd or gbd")),
    };
    let general = dreg.finite().map(|d| (d + 1).max(max_degree));
    let general_cert = |id: &str, value: Option<u32>, what: &str| match (value, general) {
        (None, _) => Certificate::skipped(id, cap_reason(what)),
        (Some(v), Some(b)) => Certificate::le(id, v, b),
        (Some(v), None) => Certificate::unbounded(id, v),
    };
    let macaulay_cert = if !dreg.is_finite() {
        Certificate::skipped(cert::SD_LE_MACAULAY, "d_reg is infinite")
    } else if system.len() < nvars {
        Certificate::skipped(cert::SD_LE_MACAULAY, "fewer polynomials than variables")
    } else if let Some(s) = sd {
        Certificate::le(cert::SD_LE_MACAULAY, s, macaulay_sum(&system, nvars) + 1)
    } else {
        Certificate::skipped(cert::SD_LE_MACAULAY, cap_reason("sd"))
    };
    let certs = vec![
        gbd_cert,
        main_cert,
        identity_cert,
        general_cert(cert::SD_LE_GENERAL, sd, "sd"),
        general_cert(cert::LFD_LE_GENERAL, lfd, "lfd"),
        macaulay_cert,
        dim_cert,
    ];

    DegreeReport {
        d_reg: dreg,
        gbd,
        sd,
        lfd,
        order: ord,
        hypothesis,
        certificates: certs,
        dims,
        notes,
    }
}
