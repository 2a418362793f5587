//! Numerical clutching over the boundary polygon of `K_{2n}`.
//!
//! The boundary polygon is parameterised by `t ∈ [0, 2n)` with vertex `vⁱ` at
//! `t = i`. An element `g` of `G_χ` with `ρ̄(g) = a_nᵏ` acts by `t ↦ t + 2k`;
//! the antipodal element `g₀` of the covering group acts by `t ↦ t + n` and
//! swaps the two copies of the polygon, with identity action on fibres.
//! Samples sit at `t_j = 2n·j/N` with `2n | N`, so every group action is an
//! index shift.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::geometry::{ImageTag, Space};
use crate::group::{FiniteGroup, Subgroup};

pub type CMat = DMatrix<Complex64>;

pub const DEFAULT_SAMPLES: usize = 4096;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Tolerance for multiplicativity, unitarity and commutation of rep models.
pub const REP_TOLERANCE: f64 = 1e-10;
/// Tolerance for character comparisons by trace.
pub const TRACE_TOLERANCE: f64 = 1e-8;
/// `‖V_{j+1}V_j⁻¹ − I‖` must stay below this for winding lifts.
pub const DENSITY_GUARD: f64 = 0.5;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cis(theta: f64) -> Complex64 {
    c(libm::cos(theta), libm::sin(theta))
}

fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

fn dist(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}

fn inverse(m: &CMat) -> Result<CMat> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Inconsistent("clutching value is singular".into()))
}

fn mat_pow(m: &CMat, e: usize) -> CMat {
    let mut out = identity(m.nrows());
    for _ in 0..e {
        out = &out * m;
    }
    out
}

fn principal_arg(z: Complex64) -> f64 {
    libm::atan2(z.im, z.re)
}

/// 2-dimensional unitary models keyed by name, as generator pairs.
fn registry(order: usize) -> Vec<(String, [CMat; 2])> {
    let mut out = Vec::new();
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    if order == 8 {
        out.push((
            "Q8".into(),
            [
                CMat::from_row_slice(2, 2, &[i, z, z, -i]),
                CMat::from_row_slice(2, 2, &[z, one, -one, z]),
            ],
        ));
    }
    if order.is_multiple_of(2) && order >= 6 {
        let m = order / 2;
        for k in 1..=(m - 1) / 2 {
            let w = cis(2.0 * PI * k as f64 / m as f64);
            out.push((
                format!("D{m}/{k}"),
                [
                    CMat::from_row_slice(2, 2, &[w, z, z, w.conj()]),
                    CMat::from_row_slice(2, 2, &[z, one, one, z]),
                ],
            ));
        }
    }
    out
}

/// A unitary matrix model of the irreducible `χ` of `H`, indexed like `h`.
///
/// Linear characters are used directly; higher degrees are matched against
/// the registry (`Q8`, `D_m`) by searching generator pairs of `H`.
pub fn kernel_model(h: &FiniteGroup, chi: impl Fn(usize) -> Complex64, degree: usize) -> Result<(String, Vec<CMat>)> {
    if degree == 1 {
        let mats = (0..h.order()).map(|x| CMat::from_element(1, 1, chi(x))).collect();
        return Ok(("linear".into(), mats));
    }
    let n = h.order();
    for (name, gens) in registry(n) {
        let ord = |m: &CMat| (1..=n).find(|&e| dist(&mat_pow(m, e), &identity(2)) < REP_TOLERANCE);
        let (o0, o1) = (ord(&gens[0]), ord(&gens[1]));
        for x in 1..n {
            if Some(h.element_order(x)) != o0 {
                continue;
            }
            for y in 1..n {
                if Some(h.element_order(y)) != o1 {
                    continue;
                }
                let Ok(mats) = h.extend_hom(
                    &[x, y],
                    &gens,
                    identity(2),
                    |a, b| a * b,
                    |a, b| dist(a, b) < REP_TOLERANCE,
                ) else {
                    continue;
                };
                if (0..n).all(|g| (mats[g].trace() - chi(g)).norm() < TRACE_TOLERANCE) {
                    return Ok((name, mats));
                }
            }
        }
    }
    Err(Error::OutOfScope(format!(
        "no matrix model for an irreducible of degree {degree} of a kernel of order {n}"
    )))
}

/// Unitary model of `W_{d⁻¹}` as a `G_χ`-representation, with `H` acting as
/// `I_k ⊗ X`. The commutant of `H` is `GL_k ⊗ I_d`.
#[derive(Debug, Clone)]
pub struct UnitaryRepModel {
    n: u32,
    copies: usize,
    degree: usize,
    kernel_model: String,
    group: FiniteGroup,
    kernel: Subgroup,
    generator: usize,
    /// `ρ̄(g) = a_n^{powers[g]}`.
    powers: Vec<usize>,
    matrices: Vec<CMat>,
}

impl UnitaryRepModel {
    /// Realises the `d⁻¹` multiplicities of a triple for an odd cyclic image.
    pub fn build(ctx: &Context, m_minus: &[usize]) -> Result<UnitaryRepModel> {
        let n = match ctx.image_tag() {
            ImageTag::Cyclic(n) if n % 2 == 1 => n,
            tag => {
                return Err(Error::OutOfScope(format!(
                    "clutching needs an odd cyclic image, not {tag}"
                )))
            }
        };
        let side = ctx.rp2();
        let a = ctx.gchi_assignment();
        let g = a.group();
        if side.stabs.stab_minus.order() != g.order() {
            return Err(Error::Inconsistent("G_chi does not fix the south pole".into()));
        }
        let point = &side.point_tables[0];
        if m_minus.len() != point.len() {
            return Err(Error::InvalidInput("multiplicity vector has the wrong length".into()));
        }
        let h = side.h_table.subgroup().clone();
        let hg = h.to_group(g);
        let degree = side.h_table.table().degree(side.chi);
        let (kernel_model, x) = kernel_model(&hg, |l| side.h_table.value(side.chi, h.members()[l]).eval(), degree)?;
        let x_of = |y: usize| &x[h.local_index(y).expect("element of H")];

        let g1 = (0..g.order())
            .find(|&e| a.rotation_power(e) == Some(1 % n))
            .expect("some element maps to the generator");
        // Reynolds average of E_ab gives A with A·X(h) = X(g₁hg₁⁻¹)·A
        let mut amat = None;
        'search: for r in 0..degree {
            for s in 0..degree {
                let mut e = CMat::zeros(degree, degree);
                e[(r, s)] = c(1.0, 0.0);
                let mut acc = CMat::zeros(degree, degree);
                for &y in h.members() {
                    acc += x_of(g.conjugate(y, g1)) * &e * x_of(g.inv(y));
                }
                if acc.norm() > 1e-6 {
                    amat = Some(acc);
                    break 'search;
                }
            }
        }
        let mut amat = amat.ok_or_else(|| Error::Inconsistent("no intertwiner for the generator".into()))?;
        let scale = (&amat * amat.adjoint()).trace().re / degree as f64;
        amat /= c(libm::sqrt(scale), 0.0);
        let gn = g.pow(g1, n as usize);
        let lambda = (mat_pow(&amat, n as usize) * x_of(gn).adjoint()).trace() / c(degree as f64, 0.0);
        amat /= lambda.powf(1.0 / n as f64);

        // U_a(h·g₁ʲ) = ζ_nᵃʲ X(h) Aʲ, candidates matched to rows by trace
        let decompose = |e: usize| -> (usize, usize) {
            let j = a.rotation_power(e).expect("image is cyclic") as usize;
            (g.mul(e, g.inv(g.pow(g1, j))), j)
        };
        let candidate = |tw: u32, e: usize| -> CMat {
            let (y, j) = decompose(e);
            x_of(y) * mat_pow(&amat, j) * cis(2.0 * PI * (tw as usize * j) as f64 / n as f64)
        };
        let stab = point.subgroup();
        let mut twists = Vec::new();
        for (row, &m) in m_minus.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let tw = (0..n)
                .find(|&tw| {
                    stab.members()
                        .iter()
                        .all(|&e| (candidate(tw, e).trace() - point.value(row, e).eval()).norm() < TRACE_TOLERANCE)
                })
                .ok_or_else(|| {
                    Error::TraceMismatch(format!("no model twist realises irreducible {row} at the south pole"))
                })?;
            twists.extend(core::iter::repeat_n(tw, m));
        }
        if twists.is_empty() {
            return Err(Error::InvalidInput("zero multiplicity vector".into()));
        }
        let copies = twists.len();
        let matrices = (0..g.order())
            .map(|e| {
                let mut u = CMat::zeros(copies * degree, copies * degree);
                for (l, &tw) in twists.iter().enumerate() {
                    u.view_mut((l * degree, l * degree), (degree, degree))
                        .copy_from(&candidate(tw, e));
                }
                u
            })
            .collect();
        let model = UnitaryRepModel {
            n,
            copies,
            degree,
            kernel_model,
            group: g.clone(),
            kernel: h,
            generator: g1,
            powers: (0..g.order()).map(|e| decompose(e).1).collect(),
            matrices,
        };
        model.check(REP_TOLERANCE)?;
        Ok(model)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `k`, the multiplicity of `χ` in `W`.
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// `χ(1)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.copies * self.degree
    }

    pub fn kernel_model(&self) -> &str {
        &self.kernel_model
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Element of `G_χ` mapped to `a_n`.
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    /// `B ⊗ I_d` for a `k × k` block `B`.
    pub fn commutant_block(&self, b: &CMat) -> CMat {
        assert_eq!((b.nrows(), b.ncols()), (self.copies, self.copies));
        b.kronecker(&identity(self.degree))
    }

    /// Multiplicativity, unitarity and commutation with the commutant.
    pub fn check(&self, tol: f64) -> Result<()> {
        let g = &self.group;
        let id = identity(self.dimension());
        for (x, u) in self.matrices.iter().enumerate() {
            let r = dist(&(u.adjoint() * u), &id);
            if r > tol {
                return Err(Error::Tolerance {
                    what: "unitarity".into(),
                    residual: r,
                    tolerance: tol,
                });
            }
            for y in 0..g.order() {
                let r = dist(&(u * &self.matrices[y]), &self.matrices[g.mul(x, y)]);
                if r > tol {
                    return Err(Error::Tolerance {
                        what: "multiplicativity".into(),
                        residual: r,
                        tolerance: tol,
                    });
                }
            }
        }
        for a in 0..self.copies {
            for b in 0..self.copies {
                let mut e = CMat::zeros(self.copies, self.copies);
                e[(a, b)] = c(1.0, 0.0);
                let blk = self.commutant_block(&e);
                for &h in self.kernel.members() {
                    let u = &self.matrices[h];
                    let r = dist(&(u * &blk), &(&blk * u));
                    if r > tol {
                        return Err(Error::Tolerance {
                            what: "commutant".into(),
                            residual: r,
                            tolerance: tol,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `σ(s) = diag(e^{2πis}, 1, …, 1) ⊗ I_d`.
    pub fn sigma(&self, s: f64) -> CMat {
        let mut b = identity(self.copies);
        b[(0, 0)] = cis(2.0 * PI * s);
        self.commutant_block(&b)
    }

    /// Samples of `σ` at `s = j/samples`, `j = 0..=samples`.
    pub fn sigma_loop(&self, samples: usize) -> Vec<CMat> {
        (0..=samples).map(|j| self.sigma(j as f64 / samples as f64)).collect()
    }

    /// A random loop `P(s) = I + sin(πs)·B(s)` in the commutant with `‖B(s)‖ < 1`.
    pub fn random_commutant_arc<R: Rng>(&self, rng: &mut R) -> impl Fn(f64) -> CMat + '_ {
        let k = self.copies;
        let mut rand_block = || {
            let m = CMat::from_fn(k, k, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let norm = m.norm().max(1e-12);
            m * c(0.3 / norm, 0.0)
        };
        let bs = [rand_block(), rand_block(), rand_block()];
        move |s: f64| {
            let b = &bs[0] + &bs[1] * c(libm::cos(2.0 * PI * s), 0.0) + &bs[2] * c(libm::sin(2.0 * PI * s), 0.0);
            self.commutant_block(&(identity(k) + b * c(libm::sin(PI * s), 0.0)))
        }
    }
}

/// Smallest multiple of `2n` that is at least `samples`.
pub fn grid_size(n: u32, samples: usize) -> usize {
    let step = 2 * n as usize;
    samples.max(step).div_ceil(step) * step
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Trivial,
    Twisted,
}

/// Samples of a clutching map.
///
/// In S² mode `lower` and `upper` are the two copies of the boundary polygon;
/// in RP² mode only `lower` is present.
#[derive(Debug, Clone)]
pub struct SampledClutchingMap {
    pub mode: Space,
    pub n: u32,
    pub lower: Vec<CMat>,
    pub upper: Vec<CMat>,
}

impl SampledClutchingMap {
    pub fn samples(&self) -> usize {
        self.lower.len()
    }

    /// Parameter of sample `j`.
    pub fn t(&self, j: usize) -> f64 {
        2.0 * self.n as f64 * j as f64 / self.samples() as f64
    }

    fn shift(&self, steps: usize) -> usize {
        steps * self.samples() / (2 * self.n as usize)
    }

    /// Pointwise block sum of two maps on the same grid.
    pub fn block_sum(&self, other: &SampledClutchingMap) -> Result<SampledClutchingMap> {
        if self.mode != other.mode || self.n != other.n || self.samples() != other.samples() {
            return Err(Error::InvalidInput("maps live on different grids".into()));
        }
        let join = |a: &CMat, b: &CMat| {
            let (p, q) = (a.nrows(), b.nrows());
            let mut m = CMat::zeros(p + q, p + q);
            m.view_mut((0, 0), (p, p)).copy_from(a);
            m.view_mut((p, p), (q, q)).copy_from(b);
            m
        };
        Ok(SampledClutchingMap {
            mode: self.mode,
            n: self.n,
            lower: self.lower.iter().zip(&other.lower).map(|(a, b)| join(a, b)).collect(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| join(a, b)).collect(),
        })
    }
}

/// Propagates a map on the arc `[0, 1]` with `arc(0) = arc(1) = I` to the
/// whole boundary by `γ = (g₁^m, g₀)`, `m = (n+1)/2`, which sends the lower
/// copy at `t` to the upper copy at `t + 1`:
/// `Φ̄(j + s) = U^{mj} arc(s)^{±1} U^{−mj}`, the sign alternating with `j`.
pub fn assemble_from_arc(
    rep: &UnitaryRepModel,
    arc: impl Fn(f64) -> CMat,
    samples: usize,
) -> Result<SampledClutchingMap> {
    let n = rep.n as usize;
    let big_n = grid_size(rep.n, samples);
    let per_edge = big_n / (2 * n);
    let u = rep.matrix(rep.generator);
    let m = n.div_ceil(2);
    let um = mat_pow(u, m);
    let um_inv = um.adjoint();
    let arc_samples: Vec<(CMat, CMat)> = (0..per_edge)
        .map(|r| {
            let v = arc(r as f64 / per_edge as f64);
            let vi = inverse(&v)?;
            Ok((v, vi))
        })
        .collect::<Result<_>>()?;
    let mut lower = Vec::with_capacity(big_n);
    let (mut conj, mut conj_inv) = (identity(rep.dimension()), identity(rep.dimension()));
    for j in 0..2 * n {
        for (v, vi) in &arc_samples {
            let x = if j % 2 == 0 { v } else { vi };
            lower.push(&conj * x * &conj_inv);
        }
        conj = &conj * &um;
        conj_inv = &um_inv * &conj_inv;
    }
    let upper = lower.iter().map(inverse).collect::<Result<_>>()?;
    Ok(SampledClutchingMap {
        mode: Space::S2,
        n: rep.n,
        lower,
        upper,
    })
}

/// The trivial (`Φ̄ ≡ id`) or twisted (`σ ∨ σ⁻¹` on `[0, 2]`) clutching map, checked against `tol`.
pub fn assemble_clutching(
    rep: &UnitaryRepModel,
    variant: Variant,
    samples: usize,
    tol: f64,
) -> Result<SampledClutchingMap> {
    let map = match variant {
        Variant::Trivial => assemble_from_arc(rep, |_| identity(rep.dimension()), samples)?,
        Variant::Twisted => assemble_from_arc(rep, |s| rep.sigma(s), samples)?,
    };
    residuals(rep, &map)?.within(tol)?;
    Ok(map)
}

/// Largest residuals of the identification (E1) and equivariance (E2) equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub identification: f64,
    pub equivariance: f64,
}

impl Residuals {
    pub fn within(self, tol: f64) -> Result<Residuals> {
        for (what, r) in [
            ("identification", self.identification),
            ("equivariance", self.equivariance),
        ] {
            // NaN residuals fail too
            if r.is_nan() || r > tol {
                return Err(Error::Tolerance {
                    what: what.into(),
                    residual: r,
                    tolerance: tol,
                });
            }
        }
        Ok(self)
    }
}

/// Residuals in the mode of the map: `Φ̄(c x̄) = Φ̄(x̄)⁻¹`, `Φ̄(ḡx̄) = ḡΦ̄(x̄)ḡ⁻¹`
/// on S², and `Φ(g₀c x̄) = Φ(x̄)⁻¹`, `Φ(gx̄) = gΦ(x̄)g⁻¹` on RP².
pub fn residuals(rep: &UnitaryRepModel, map: &SampledClutchingMap) -> Result<Residuals> {
    let big_n = map.samples();
    if !big_n.is_multiple_of(2 * map.n as usize) || map.n != rep.n {
        return Err(Error::InvalidInput("grid does not match the rep model".into()));
    }
    let id = identity(rep.dimension());
    let half = map.shift(map.n as usize);
    let mut e1: f64 = 0.0;
    let mut e2: f64 = 0.0;
    let a = |v: &[CMat], j: usize| v[j % big_n].clone();
    match map.mode {
        Space::S2 => {
            if map.upper.len() != big_n {
                return Err(Error::InvalidInput("S2 map needs both copies".into()));
            }
            for j in 0..big_n {
                e1 = e1.max(dist(&(&map.upper[j] * &map.lower[j]), &id));
                // g₀ swaps the copies and shifts by n
                e2 = e2.max(dist(&a(&map.upper, j + half), &map.lower[j]));
                e2 = e2.max(dist(&a(&map.lower, j + half), &map.upper[j]));
            }
        }
        Space::RP2 => {
            for j in 0..big_n {
                e1 = e1.max(dist(&(a(&map.lower, j + half) * &map.lower[j]), &id));
            }
        }
    }
    for g in 0..rep.group.order() {
        let sh = map.shift(2 * rep.powers[g]);
        let u = rep.matrix(g);
        let ui = u.adjoint();
        let copies: [&[CMat]; 2] = [&map.lower, &map.upper];
        for v in copies.iter().filter(|v| !v.is_empty()) {
            for j in 0..big_n {
                e2 = e2.max(dist(&a(v, j + sh), &(u * &v[j] * &ui)));
            }
        }
    }
    Ok(Residuals {
        identification: e1,
        equivariance: e2,
    })
}

/// `q_Ω`: an S² map restricted to the lower copy, as an RP² map.
pub fn q_omega(map: &SampledClutchingMap) -> Result<SampledClutchingMap> {
    if map.mode != Space::S2 {
        return Err(Error::InvalidInput("q_omega expects an S2 map".into()));
    }
    Ok(SampledClutchingMap {
        mode: Space::RP2,
        n: map.n,
        lower: map.lower.clone(),
        upper: Vec::new(),
    })
}

/// `q_Ω⁻¹`: the upper copy is recovered by `Φ̄(x̄ at t, upper) = Φ(t + n)`.
pub fn q_omega_inv(map: &SampledClutchingMap) -> Result<SampledClutchingMap> {
    if map.mode != Space::RP2 {
        return Err(Error::InvalidInput("q_omega_inv expects an RP2 map".into()));
    }
    let big_n = map.samples();
    let half = map.shift(map.n as usize);
    Ok(SampledClutchingMap {
        mode: Space::S2,
        n: map.n,
        lower: map.lower.clone(),
        upper: (0..big_n).map(|j| map.lower[(j + half) % big_n].clone()).collect(),
    })
}

/// Sup-norm distance between maps on the same grid.
pub fn sup_distance(a: &SampledClutchingMap, b: &SampledClutchingMap) -> f64 {
    let lo = a.lower.iter().zip(&b.lower).map(|(x, y)| dist(x, y));
    let up = a.upper.iter().zip(&b.upper).map(|(x, y)| dist(x, y));
    let mut d = lo.chain(up).fold(0.0, f64::max);
    if a.lower.len() != b.lower.len() || a.upper.len() != b.upper.len() {
        d = f64::INFINITY;
    }
    d
}

/// Continuous lift of `arg det` along `values`, starting from the principal argument.
pub fn lift_arg_det(values: &[CMat]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values.len());
    let Some(first) = values.first() else {
        return Ok(out);
    };
    let mut acc = principal_arg(first.determinant());
    out.push(acc);
    for w in values.windows(2) {
        let step = &w[1] * inverse(&w[0])?;
        let jump = dist(&step, &identity(step.nrows()));
        if jump >= DENSITY_GUARD {
            return Err(Error::SamplingTooCoarse(format!(
                "step norm {jump:.3} exceeds {DENSITY_GUARD}"
            )));
        }
        let delta = principal_arg(step.determinant());
        if delta.abs() >= PI / 2.0 {
            return Err(Error::SamplingTooCoarse(format!(
                "argument step {delta:.3} exceeds pi/2"
            )));
        }
        acc += delta;
        out.push(acc);
    }
    Ok(out)
}

/// Winding number of `det` along a closed sampled loop (first sample repeated at the end or not).
pub fn loop_winding(values: &[CMat]) -> Result<i64> {
    let mut closed = values.to_vec();
    if let (Some(a), Some(b)) = (values.first(), values.last()) {
        if dist(a, b) > DEFAULT_TOLERANCE {
            closed.push(a.clone());
        }
    }
    let lift = lift_arg_det(&closed)?;
    let total = lift.last().copied().unwrap_or(0.0) - lift.first().copied().unwrap_or(0.0);
    Ok(libm::round(total / (2.0 * PI)) as i64)
}

/// S²: winding of `det Φ̄` over the full lower boundary (positive for `σ`).
/// RP²: `round((F(n) + F(0)) / 2π) mod 2` for the lift `F` of `arg det Φ` on `[0, n]`.
pub fn chern_from_winding(map: &SampledClutchingMap) -> Result<i64> {
    match map.mode {
        Space::S2 => loop_winding(&map.lower),
        Space::RP2 => {
            let half = map.shift(map.n as usize);
            let lift = lift_arg_det(&map.lower[..=half])?;
            let v = libm::round((lift[half] + lift[0]) / (2.0 * PI)) as i64;
            Ok(v.rem_euclid(2))
        }
    }
}
