//! Report builders for each subcommand (schema `equivect-report/1`).
//!
//! Element indices refer to the BFS order of the group the subgroup lives in:
//! `G` for character tables of `G` and `H`, `G_χ` for the RP² side and
//! `G_χ × Z/2` (index `2g + j`) for the S² side. Reports carry no timestamps,
//! so identical inputs give byte-identical output.

use std::io::Write;

use anyhow::Result;
use equivect_core::character::LocalTable;
use equivect_core::checks::{run_checks, CheckConfig, Status};
use equivect_core::clutching::{
    assemble_clutching, chern_from_winding, grid_size, lift_arg_det, q_omega, residuals, UnitaryRepModel, Variant,
};
use equivect_core::context::Context;
use equivect_core::geometry::ExactVec3;
use equivect_core::group::Subgroup;
use equivect_core::semigroup::{describe, regime, AdmissibleTriple, BundleClass, SideData};
use serde::Serialize;

pub const REPORT_SCHEMA: &str = "equivect-report/1";

/// Trace points kept per class in the JSON output of `chern-demo`.
const TRACE_POINTS: usize = 64;

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub command: &'static str,
    pub context: ContextInfo,
    pub result: T,
}

#[derive(Debug, Serialize)]
pub struct ContextInfo {
    pub group: String,
    pub order: usize,
    pub image_tag: String,
    pub kernel_order: usize,
    pub chi: usize,
    pub chi_degree: usize,
    pub gchi_order: usize,
    pub regime: &'static str,
    pub model: String,
}

impl ContextInfo {
    pub fn new(name: &str, ctx: &Context) -> ContextInfo {
        ContextInfo {
            group: name.to_string(),
            order: ctx.group().order(),
            image_tag: ctx.image_tag().to_string(),
            kernel_order: ctx.kernel_table().subgroup().order(),
            chi: ctx.chi(),
            chi_degree: ctx.chi_degree(),
            gchi_order: ctx.gchi().order(),
            regime: regime(ctx.image_tag()),
            model: ctx.model().tag().to_string(),
        }
    }
}

pub fn wrap<T: Serialize>(command: &'static str, name: &str, ctx: &Context, result: T) -> Report<T> {
    Report {
        schema: REPORT_SCHEMA,
        command,
        context: ContextInfo::new(name, ctx),
        result,
    }
}

// ---- table ----

#[derive(Debug, Serialize)]
pub struct ClassInfo {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub subgroup: String,
    pub order: usize,
    pub members: Vec<usize>,
    pub field_conductor: u32,
    pub classes: Vec<ClassInfo>,
    pub degrees: Vec<usize>,
    /// Exact values in the power basis of `ζ_M`, written `c*zM^k`.
    pub rows: Vec<Vec<String>>,
}

fn table_report(label: &str, t: &LocalTable) -> TableReport {
    let table = t.table();
    let classes = t
        .class_representatives()
        .into_iter()
        .zip(table.class_sizes())
        .zip(table.classes())
        .map(|((rep, size), c)| ClassInfo {
            representative: rep,
            size,
            element_order: t.group().element_order(c[0]),
        })
        .collect();
    TableReport {
        subgroup: label.to_string(),
        order: t.subgroup().order(),
        members: t.subgroup().members().to_vec(),
        field_conductor: table.field().conductor(),
        classes,
        degrees: table.degrees().to_vec(),
        rows: table
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
    }
}

pub fn tables(ctx: &Context) -> Result<Vec<TableReport>> {
    let g = LocalTable::whole(ctx.group(), ctx.char_field())?;
    let mut out = vec![table_report("G", &g), table_report("H", ctx.kernel_table())];
    for (side, prefix) in [(ctx.rp2(), "rp2"), (ctx.s2(), "s2")] {
        for (i, name) in ["d-1", "d0", "d1"].iter().enumerate() {
            out.push(table_report(&format!("{prefix} stab({name})"), &side.point_tables[i]));
        }
        for (i, name) in ["C0", "C1", "D"].iter().enumerate() {
            out.push(table_report(&format!("{prefix} stab({name})"), &side.chain_tables[i]));
        }
    }
    Ok(out)
}

// ---- stabilizers ----

#[derive(Debug, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    pub members: Vec<usize>,
}

impl From<&Subgroup> for SubgroupInfo {
    fn from(s: &Subgroup) -> Self {
        SubgroupInfo {
            order: s.order(),
            members: s.members().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SideStabilizers {
    pub acting_order: usize,
    pub stab_minus: SubgroupInfo,
    pub stab_0: SubgroupInfo,
    pub stab_1: SubgroupInfo,
    pub chain_0: SubgroupInfo,
    pub chain_1: SubgroupInfo,
    pub domain: SubgroupInfo,
    pub transporter: Option<usize>,
    pub chi_row: usize,
}

fn side_stabilizers(side: &SideData) -> SideStabilizers {
    let s = &side.stabs;
    SideStabilizers {
        acting_order: side.group.order(),
        stab_minus: (&s.stab_minus).into(),
        stab_0: (&s.stab_0).into(),
        stab_1: (&s.stab_1).into(),
        chain_0: (&s.chain_0).into(),
        chain_1: (&s.chain_1).into(),
        domain: (&s.domain).into(),
        transporter: s.transporter,
        chi_row: side.chi,
    }
}

#[derive(Debug, Serialize)]
pub struct StabilizerReport {
    pub d_minus: [String; 3],
    pub d0: [String; 3],
    pub d1: [String; 3],
    pub rp2: SideStabilizers,
    pub s2: SideStabilizers,
}

fn coords(p: &ExactVec3) -> [String; 3] {
    p.0.clone().map(|c| c.to_string())
}

pub fn stabilizers(ctx: &Context) -> StabilizerReport {
    let m = ctx.model();
    StabilizerReport {
        d_minus: coords(m.d_minus()),
        d0: coords(m.d0()),
        d1: coords(m.d1()),
        rp2: side_stabilizers(ctx.rp2()),
        s2: side_stabilizers(ctx.s2()),
    }
}

// ---- semigroup ----

#[derive(Debug, Clone, Serialize)]
pub struct TripleInfo {
    pub rank: usize,
    pub m_minus: Vec<usize>,
    pub m_0: Vec<usize>,
    pub m_1: Vec<usize>,
    pub label: String,
}

fn triple_info(side: &SideData, t: &AdmissibleTriple) -> TripleInfo {
    TripleInfo {
        rank: side.system.rank(t),
        m_minus: t.m_minus.clone(),
        m_0: t.m_0.clone(),
        m_1: t.m_1.clone(),
        label: format!(
            "({} | {} | {})",
            describe(&t.m_minus),
            describe(&t.m_0),
            describe(&t.m_1)
        ),
    }
}

#[derive(Debug, Serialize)]
pub struct SemigroupReport {
    pub max_rank: usize,
    /// Number of admissible triples of rank exactly `r`, for `r = 1..=max_rank`.
    pub count_by_rank: Vec<usize>,
    pub triples: Vec<TripleInfo>,
    pub hilbert_basis: Vec<TripleInfo>,
}

pub fn semigroup(ctx: &Context, max_rank: usize) -> Result<SemigroupReport> {
    let side = ctx.rp2();
    let triples: Vec<TripleInfo> = ctx.enumerate(max_rank).iter().map(|t| triple_info(side, t)).collect();
    let count_by_rank = (1..=max_rank)
        .map(|r| triples.iter().filter(|t| t.rank == r).count())
        .collect();
    let hilbert_basis = ctx.hilbert_basis()?.iter().map(|t| triple_info(side, t)).collect();
    Ok(SemigroupReport {
        max_rank,
        count_by_rank,
        triples,
        hilbert_basis,
    })
}

// ---- classify ----

#[derive(Debug, Serialize)]
pub struct ClassInfoRow {
    #[serde(flatten)]
    pub triple: TripleInfo,
    pub twin_bit: Option<u8>,
    pub chern_parity: Option<u8>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub max_rank: usize,
    pub regime: &'static str,
    pub triple_count: usize,
    pub class_count: usize,
    pub classes: Vec<ClassInfoRow>,
    pub notes: Vec<&'static str>,
}

pub fn classify(ctx: &Context, max_rank: usize) -> Result<ClassifyReport> {
    let side = ctx.rp2();
    let classes = ctx.classify(max_rank)?;
    let triple_count = ctx.enumerate(max_rank).len();
    let twins = ctx.image_tag().is_cyclic_odd();
    let mut notes = Vec::new();
    if twins {
        notes.push("two classes per triple, distinguished by twin_bit; chern_parity = twin_bit * chi_degree mod 2");
        notes.push("twin_bit is combined by XOR under direct sum; this law is a modeling choice, not a derived fact");
    } else {
        notes.push("each admissible triple determines exactly one class");
    }
    Ok(ClassifyReport {
        max_rank,
        regime: regime(ctx.image_tag()),
        triple_count,
        class_count: classes.len(),
        classes: classes.iter().map(|c| class_row(side, c)).collect(),
        notes,
    })
}

fn class_row(side: &SideData, c: &BundleClass) -> ClassInfoRow {
    ClassInfoRow {
        triple: triple_info(side, &c.triple),
        twin_bit: c.twin_bit,
        chern_parity: c.chern_parity,
    }
}

// ---- chern-demo ----

#[derive(Debug, Serialize)]
pub struct TracePoint {
    pub t: f64,
    pub arg_det: f64,
}

#[derive(Debug, Serialize)]
pub struct DemoRun {
    #[serde(flatten)]
    pub triple: TripleInfo,
    pub twin_bit: u8,
    pub variant: &'static str,
    pub kernel_model: String,
    pub samples: usize,
    pub identification_residual: f64,
    pub equivariance_residual: f64,
    pub s2_winding: i64,
    pub rp2_parity: i64,
    pub classified_parity: u8,
    pub agrees: bool,
    /// Continuous lift of `arg det Φ` on the lower copy over `[0, n]`, subsampled.
    pub trace: Vec<TracePoint>,
}

#[derive(Debug, Serialize)]
pub struct DemoReport {
    pub max_rank: usize,
    pub samples_requested: usize,
    pub tolerance: f64,
    pub all_agree: bool,
    pub runs: Vec<DemoRun>,
}

/// Full-resolution traces, one `(class, t, arg_det)` row per sample.
pub struct DemoTraces(pub Vec<(usize, Vec<TracePoint>)>);

impl DemoTraces {
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "class,t,arg_det")?;
        for (k, pts) in &self.0 {
            for p in pts {
                writeln!(w, "{k},{},{}", p.t, p.arg_det)?;
            }
        }
        Ok(())
    }
}

pub fn chern_demo(ctx: &Context, max_rank: usize, samples: usize, tol: f64) -> Result<(DemoReport, DemoTraces)> {
    let side = ctx.rp2();
    let mut runs = Vec::new();
    let mut traces = Vec::new();
    for (k, class) in ctx.classify(max_rank)?.iter().enumerate() {
        let rep = UnitaryRepModel::build(ctx, &class.triple.m_minus)?;
        rep.check(tol)?;
        let bit = class.twin_bit.unwrap_or(0);
        let variant = if bit == 1 { Variant::Twisted } else { Variant::Trivial };
        let up = assemble_clutching(&rep, variant, samples, tol)?;
        let res = residuals(&rep, &up)?.within(tol)?;
        let s2_winding = chern_from_winding(&up)?;
        let down = q_omega(&up)?;
        let rp2_parity = chern_from_winding(&down)?;
        let half = down.samples() / 2;
        let lift = lift_arg_det(&down.lower[..=half])?;
        let full: Vec<TracePoint> = lift
            .iter()
            .enumerate()
            .map(|(j, &a)| TracePoint {
                t: down.t(j),
                arg_det: a,
            })
            .collect();
        let stride = (full.len() / TRACE_POINTS).max(1);
        let trace = full
            .iter()
            .enumerate()
            .filter(|(j, _)| j % stride == 0 || *j + 1 == full.len())
            .map(|(_, p)| TracePoint {
                t: p.t,
                arg_det: p.arg_det,
            })
            .collect();
        let classified_parity = class.chern_parity.unwrap_or(0);
        runs.push(DemoRun {
            triple: triple_info(side, &class.triple),
            twin_bit: bit,
            variant: if bit == 1 { "twisted" } else { "trivial" },
            kernel_model: rep.kernel_model().to_string(),
            samples: grid_size(rep.n(), samples),
            identification_residual: res.identification,
            equivariance_residual: res.equivariance,
            s2_winding,
            rp2_parity,
            classified_parity,
            agrees: s2_winding == 0 && rp2_parity == classified_parity as i64,
            trace,
        });
        traces.push((k, full));
    }
    let report = DemoReport {
        max_rank,
        samples_requested: samples,
        tolerance: tol,
        all_agree: runs.iter().all(|r| r.agrees),
        runs,
    };
    Ok((report, DemoTraces(traces)))
}

// ---- check ----

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckRow>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub fn check(ctx: &Context, cfg: &CheckConfig) -> CheckReport {
    let outcomes = run_checks(ctx, cfg);
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    CheckReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        checks: outcomes
            .iter()
            .map(|o| CheckRow {
                name: o.name,
                status: match o.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skip => "skip",
                },
                detail: o.detail.clone(),
            })
            .collect(),
    }
}

// ---- model ----

#[derive(Debug, Serialize)]
pub struct PointInfo {
    pub label: String,
    pub coords: [String; 3],
    pub approx: [f64; 3],
}

#[derive(Debug, Serialize)]
pub struct CellInfo {
    pub label: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub tag: String,
    pub vertex_count: usize,
    pub points: Vec<PointInfo>,
    pub edges: Vec<CellInfo>,
    pub faces: Vec<CellInfo>,
    pub domain: Vec<[String; 3]>,
}

pub fn model(ctx: &Context) -> ModelReport {
    let m = ctx.model();
    ModelReport {
        tag: m.tag().to_string(),
        vertex_count: m.vertex_count(),
        points: m
            .points()
            .iter()
            .zip(m.point_labels())
            .map(|(p, l)| PointInfo {
                label: l.clone(),
                coords: coords(p),
                approx: p.to_f64(),
            })
            .collect(),
        edges: m
            .edges()
            .iter()
            .map(|e| CellInfo {
                label: e.label.clone(),
                points: e.path.clone(),
            })
            .collect(),
        faces: m
            .faces()
            .iter()
            .map(|f| CellInfo {
                label: f.label.clone(),
                points: f.point_set(),
            })
            .collect(),
        domain: m.domain().iter().map(coords).collect(),
    }
}
