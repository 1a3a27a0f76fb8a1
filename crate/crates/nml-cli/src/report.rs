//! Report rendering. Every JSON report carries the `nml/1` schema tag,
//! prints rationals exactly as `num/den` with decimals as display-only
//! companions, and is byte-identical across identical invocations unless
//! timing fields were requested.

use serde::Serialize;

use nml_core::bounds::MBoundRow;
use nml_core::nm::NearMissReport;
use nml_core::rational::{decimal_string, rational_string, Rational};
use nml_core::search::{CertificateKind, SearchCertificate};
use nml_core::seller::SellerDesign;
use nml_core::FrameDocument;

pub const SCHEMA: &str = "nml/1";
const PROB_DECIMALS: u32 = 4;
const RATIO_DECIMALS: u32 = 2;

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn prob_pair(r: &Rational) -> (String, String) {
    (rational_string(r), decimal_string(r, PROB_DECIMALS))
}

#[derive(Serialize)]
struct NmReport<'a> {
    schema: &'static str,
    command: &'static str,
    input: &'a str,
    q: u32,
    n: u32,
    winners: u64,
    index: String,
    index_decimal: String,
    p: String,
    p_decimal: String,
    seller_value: String,
    seller_value_decimal: String,
    covering_radius: u32,
    perfect_radius_1: bool,
    profile: &'a [u64],
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_nm(
    input: &str,
    doc: &FrameDocument,
    report: &NearMissReport,
    perfect_radius_1: bool,
    elapsed_ms: Option<u128>,
) -> String {
    let (index, index_decimal) = prob_pair(&report.index);
    let (p, p_decimal) = prob_pair(&report.win_probability);
    let (seller_value, seller_value_decimal) = prob_pair(&report.seller_value);
    pretty(&NmReport {
        schema: SCHEMA,
        command: "nm",
        input,
        q: doc.frame.q(),
        n: doc.frame.n(),
        winners: doc.frame.win_count(),
        index,
        index_decimal,
        p,
        p_decimal,
        seller_value,
        seller_value_decimal,
        covering_radius: report.profile.covering_radius(),
        perfect_radius_1,
        profile: report.profile.counts(),
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct MBoundReport {
    schema: &'static str,
    command: &'static str,
    q: u32,
    n: u32,
    threshold_p: String,
    threshold_p_decimal: String,
    m: String,
    m_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_m_bound(row: &MBoundRow, elapsed_ms: Option<u128>) -> String {
    pretty(&MBoundReport {
        schema: SCHEMA,
        command: "bound-m",
        q: row.q,
        n: row.n,
        threshold_p: rational_string(&row.threshold_p),
        threshold_p_decimal: decimal_string(&row.threshold_p, PROB_DECIMALS),
        m: rational_string(&row.m),
        m_decimal: decimal_string(&row.m, RATIO_DECIMALS),
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct SphereReport {
    schema: &'static str,
    command: &'static str,
    q: u32,
    n: u32,
    r: u32,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_sphere(q: u32, n: u32, r: u32, bound: &str, elapsed_ms: Option<u128>) -> String {
    pretty(&SphereReport {
        schema: SCHEMA,
        command: "bound-sphere",
        q,
        n,
        r,
        bound: bound.to_owned(),
        elapsed_ms,
    })
}

/// The demonstration M-bound table: `q,n,p,M` with p at 4 and M at 2
/// decimals, both rounded half away from zero.
pub fn render_m_bound_table(rows: &[MBoundRow]) -> String {
    let mut out = String::from("q,n,p,M\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.q,
            row.n,
            decimal_string(&row.threshold_p, PROB_DECIMALS),
            decimal_string(&row.m, RATIO_DECIMALS),
        ));
    }
    out
}

#[derive(Serialize)]
struct CertificateReport<'a> {
    schema: &'static str,
    command: &'static str,
    q: u32,
    n: u32,
    r: u32,
    mode: &'static str,
    kind: &'static str,
    size: u64,
    target_radius: u32,
    verified_radius: u32,
    nodes_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    requested_size: Option<usize>,
    frame: &'a FrameDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_certificate(
    q: u32,
    n: u32,
    r: u32,
    cert: &SearchCertificate,
    elapsed_ms: Option<u128>,
) -> String {
    let kind = match cert.kind {
        CertificateKind::ExactMinimal => "exact-minimal",
        CertificateKind::UpperBoundWitness => "upper-bound-witness",
    };
    let mode = match cert.kind {
        CertificateKind::ExactMinimal => "exact",
        CertificateKind::UpperBoundWitness => "heuristic",
    };
    let doc = FrameDocument::bare(cert.frame.clone());
    pretty(&CertificateReport {
        schema: SCHEMA,
        command: "search-kqnr",
        q,
        n,
        r,
        mode,
        kind,
        size: cert.frame.win_count(),
        target_radius: cert.target_radius,
        verified_radius: cert.verified_radius,
        nodes_explored: cert.nodes_explored,
        seed: cert.seed,
        requested_size: cert.requested_size,
        frame: &doc,
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct OptimalFrameReport<'a> {
    schema: &'static str,
    command: &'static str,
    q: u32,
    n: u32,
    w: u64,
    index: String,
    index_decimal: String,
    frame: &'a FrameDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_optimal_frame(
    q: u32,
    n: u32,
    w: u64,
    index: &Rational,
    doc: &FrameDocument,
    elapsed_ms: Option<u128>,
) -> String {
    let (index, index_decimal) = prob_pair(index);
    pretty(&OptimalFrameReport {
        schema: SCHEMA,
        command: "search-frame",
        q,
        n,
        w,
        index,
        index_decimal,
        frame: doc,
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct CurveReport<'a> {
    schema: &'static str,
    command: &'static str,
    q: u32,
    n: u32,
    curve: &'a [u64],
    convex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_curve(q: u32, n: u32, curve: &[u64], convex: bool, elapsed_ms: Option<u128>) -> String {
    pretty(&CurveReport {
        schema: SCHEMA,
        command: "search-curve",
        q,
        n,
        curve,
        convex,
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct SellerDesignReport<'a> {
    schema: &'static str,
    command: &'static str,
    q: u32,
    m: u32,
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    code_size: Option<u64>,
    p: String,
    p_decimal: String,
    value: String,
    value_decimal: String,
    bound: String,
    optimal: bool,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    frame: Option<&'a FrameDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render_seller_design(design: &SellerDesign, elapsed_ms: Option<u128>) -> String {
    let (p, p_decimal) = prob_pair(&design.win_probability);
    let (value, value_decimal) = prob_pair(&design.value);
    let doc = design.frame.clone().map(FrameDocument::bare);
    pretty(&SellerDesignReport {
        schema: SCHEMA,
        command: "seller-design",
        q: design.params.q(),
        m: design.params.m(),
        n: design.params.length(),
        code_size: design.params.code_size(),
        p,
        p_decimal,
        value,
        value_decimal,
        bound: rational_string(&design.bound),
        optimal: design.optimal,
        verified: design.verified,
        frame: doc.as_ref(),
        elapsed_ms,
    })
}

#[derive(Serialize)]
struct ScheduleRow {
    m: u32,
    n: u64,
    p: String,
    value: String,
    verified: bool,
}

#[derive(Serialize)]
struct ScheduleReport {
    schema: &'static str,
    command: &'static str,
    q: u32,
    rows: Vec<ScheduleRow>,
}

fn schedule_rows(designs: &[SellerDesign]) -> Vec<ScheduleRow> {
    designs
        .iter()
        .map(|d| ScheduleRow {
            m: d.params.m(),
            n: d.params.length(),
            p: rational_string(&d.win_probability),
            value: rational_string(&d.value),
            verified: d.verified,
        })
        .collect()
}

pub fn render_schedule_csv(designs: &[SellerDesign]) -> String {
    let mut out = String::from("m,n,p,value,verified\n");
    for row in schedule_rows(designs) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.m, row.n, row.p, row.value, row.verified
        ));
    }
    out
}

pub fn render_schedule_json(q: u32, designs: &[SellerDesign]) -> String {
    pretty(&ScheduleReport {
        schema: SCHEMA,
        command: "seller-schedule",
        q,
        rows: schedule_rows(designs),
    })
}

/// Covering-code table rows as CSV: `R,n,K`.
pub fn render_k_table(rows: &[(u32, u32, u64)]) -> String {
    let mut out = String::from("R,n,K\n");
    for &(r, n, k) in rows {
        out.push_str(&format!("{r},{n},{k}\n"));
    }
    out
}
