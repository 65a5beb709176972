//! Inconsistency-based envelopes for the divergence between the eigenvalue
//! and geometric-mean rankings, and checks that computed rankings stay inside
//! them.
//!
//! With `kappa = 1 - KI(C)`, every compatibility index of the two rankings
//! lies in `[kappa^2, 1/kappa^2]`, their Manhattan distance in
//! `[n(kappa^2 - 1), n(1/kappa^2 - 1)]`, the mean componentwise distance in
//! `[kappa^2 - 1, 1/kappa^2 - 1]`, and the Chebyshev distance below
//! `1/kappa^2 - 1`. The matched componentwise ratios `w_ev_i / w_gm_i` lie in
//! `[kappa^2, 1/kappa^2]` as well. These are proved inequalities: a violation
//! on a valid matrix indicates an implementation bug, which is what the
//! checks exist to surface.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PcMatrix, PriorityVector};
use crate::priority::{evm, gmm, EvmOptions};
use crate::similarity::{chebyshev, comp_vectors, manhattan};

/// Envelope fields are capped at this magnitude when `kappa` is tiny; bounds
/// that large always hold and would otherwise overflow downstream arithmetic.
const ENVELOPE_CAP: f64 = 1e12;

/// Additive check tolerance, scaled by the magnitude of the compared values.
const CHECK_TOL: f64 = 1e-9;

/// The bound envelope derived from an inconsistency level.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundEnvelope {
    /// `1 - KI(C)`, in `(0, 1]`.
    pub kappa: f64,
    /// `kappa^2`: floor for every compatibility index.
    pub compat_low: f64,
    /// `1/kappa^2`: ceiling for every compatibility index.
    pub compat_high: f64,
    /// `n (kappa^2 - 1)`: floor for the Manhattan distance (nonpositive).
    pub md_low: f64,
    /// `n (1/kappa^2 - 1)`: ceiling for the Manhattan distance.
    pub md_high: f64,
    /// `1/kappa^2 - 1`: ceiling for the Chebyshev distance.
    pub cheb_high: f64,
    /// `kappa^2 - 1`: floor for the mean componentwise distance.
    pub mean_low: f64,
    /// `1/kappa^2 - 1`: ceiling for the mean componentwise distance.
    pub mean_high: f64,
    /// Set when `kappa < 1e-6` and the capped ceilings carry no information.
    pub uninformative: bool,
}

impl BoundEnvelope {
    /// Envelope for a matrix of order `n` with triad inconsistency `ki`.
    pub fn from_ki(ki: f64, n: usize) -> Self {
        let kappa = 1.0 - ki;
        let uninformative = kappa < 1e-6;
        let compat_low = kappa * kappa;
        let compat_high = (1.0 / (kappa * kappa)).min(ENVELOPE_CAP);
        let nf = n as f64;
        BoundEnvelope {
            kappa,
            compat_low,
            compat_high,
            md_low: nf * (compat_low - 1.0),
            md_high: (nf * (compat_high - 1.0)).min(ENVELOPE_CAP),
            cheb_high: (compat_high - 1.0).min(ENVELOPE_CAP),
            mean_low: compat_low - 1.0,
            mean_high: (compat_high - 1.0).min(ENVELOPE_CAP),
            uninformative,
        }
    }
}

/// Envelope for a matrix, from its measured triad inconsistency.
pub fn envelope(c: &PcMatrix) -> Result<BoundEnvelope> {
    let (ki, _) = crate::inconsistency::koczkodaj_ki(c)?;
    Ok(BoundEnvelope::from_ki(ki, c.order()))
}

/// The measured quantities the envelope is checked against.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ObservedDivergence {
    pub comp: f64,
    pub comp_lower: f64,
    pub comp_upper: f64,
    pub comp_max: f64,
    pub md: f64,
    pub cheb: f64,
    pub mean_md: f64,
}

/// Minimal slack of each inequality group; nonnegative when the group holds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundSlack {
    /// Tightest link in the compatibility chain.
    pub slack_chain: f64,
    /// Tighter side of the Manhattan interval.
    pub slack_md: f64,
    pub slack_cheb: f64,
    /// Tighter side of the mean componentwise interval.
    pub slack_mean: f64,
}

/// Outcome of checking one matrix against its envelope.
///
/// Serializes to a flat JSON object: envelope, observed values, flags, and
/// slacks all at top level.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundCheckReport {
    #[serde(flatten)]
    pub envelope: BoundEnvelope,
    #[serde(flatten)]
    pub observed: ObservedDivergence,
    pub chain_ok: bool,
    pub md_ok: bool,
    pub cheb_ok: bool,
    pub mean_ok: bool,
    #[serde(flatten)]
    pub slack: BoundSlack,
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + CHECK_TOL * a.abs().max(b.abs()).max(1.0)
}

impl BoundCheckReport {
    /// Assembles the report from parts already computed elsewhere.
    pub fn from_parts(
        n: usize,
        ki: f64,
        w_ev: &PriorityVector,
        w_gm: &PriorityVector,
    ) -> Result<Self> {
        let envelope = BoundEnvelope::from_ki(ki, n);
        let compat = comp_vectors(w_ev, w_gm)?;
        let md = manhattan(w_ev, w_gm)?;
        let cheb = chebyshev(w_ev, w_gm)?;
        let observed = ObservedDivergence {
            comp: compat.comp,
            comp_lower: compat.comp_lower,
            comp_upper: compat.comp_upper,
            comp_max: compat.comp_max,
            md,
            cheb,
            mean_md: md / n as f64,
        };

        let chain = [
            (envelope.compat_low, observed.comp_lower),
            (observed.comp_lower, observed.comp),
            (observed.comp, observed.comp_upper),
            (observed.comp_upper, observed.comp_max),
            (observed.comp_max, envelope.compat_high),
        ];
        let chain_ok = chain.iter().all(|&(a, b)| leq(a, b));
        let slack_chain = chain.iter().map(|(a, b)| b - a).fold(f64::INFINITY, f64::min);

        let md_ok = leq(envelope.md_low, md) && leq(md, envelope.md_high);
        let slack_md = (md - envelope.md_low).min(envelope.md_high - md);

        let cheb_ok = leq(cheb, envelope.cheb_high);
        let slack_cheb = envelope.cheb_high - cheb;

        let mean_ok =
            leq(envelope.mean_low, observed.mean_md) && leq(observed.mean_md, envelope.mean_high);
        let slack_mean =
            (observed.mean_md - envelope.mean_low).min(envelope.mean_high - observed.mean_md);

        Ok(BoundCheckReport {
            envelope,
            observed,
            chain_ok,
            md_ok,
            cheb_ok,
            mean_ok,
            slack: BoundSlack {
                slack_chain,
                slack_md,
                slack_cheb,
                slack_mean,
            },
        })
    }
}

/// Runs the full pipeline for one matrix: both rankings, the triad
/// inconsistency, the envelope, and every envelope check.
pub fn check_bounds(c: &PcMatrix) -> Result<BoundCheckReport> {
    check_bounds_with(c, EvmOptions::default())
}

pub fn check_bounds_with(c: &PcMatrix, opts: EvmOptions) -> Result<BoundCheckReport> {
    if c.order() <= 2 {
        return Err(Error::Domain(format!(
            "bound checks need order > 2, got {}",
            c.order()
        )));
    }
    let (ki, _) = crate::inconsistency::koczkodaj_ki(c)?;
    let ev = evm(c, opts)?;
    let gm = gmm(c);
    BoundCheckReport::from_parts(c.order(), ki, &ev.weights, &gm)
}

/// True iff every matched componentwise ratio `w_ev_i / w_gm_i` lies in
/// `[kappa^2, 1/kappa^2]`, for sum-1 rankings.
pub fn matched_ratio_bounds_from_parts(ki: f64, w_ev: &PriorityVector, w_gm: &PriorityVector) -> bool {
    let kappa = 1.0 - ki;
    let low = kappa * kappa;
    let high = (1.0 / (kappa * kappa)).min(ENVELOPE_CAP);
    w_ev
        .weights()
        .iter()
        .zip(w_gm.weights())
        .all(|(&e, &g)| {
            let r = e / g;
            leq(low, r) && leq(r, high)
        })
}

/// Pipeline form of the matched-ratio check.
pub fn matched_ratio_bounds(c: &PcMatrix) -> Result<bool> {
    if c.order() <= 2 {
        return Err(Error::Domain(format!(
            "matched-ratio check needs order > 2, got {}",
            c.order()
        )));
    }
    let (ki, _) = crate::inconsistency::koczkodaj_ki(c)?;
    let ev = evm(c, EvmOptions::default())?;
    let gm = gmm(c);
    Ok(matched_ratio_bounds_from_parts(ki, &ev.weights, &gm))
}
