//! Lindblad dynamics of the two qutrits with spontaneous decay
//! `|3⟩ → |1⟩` (rate `γe`) and `|2⟩ → |1⟩` (rate `γd`) on each spin:
//!
//! ```text
//! dρ/dt = −i[V, ρ] + Σ_J (γ_J/2)(2 J ρ J† − J†J ρ − ρ J†J)
//! J ∈ {R¹₁₃, R²₁₃} at γe,  J ∈ {R¹₁₂, R²₁₂} at γd
//! ```
//!
//! `V` is the exchange interaction of [`crate::basis::exchange_interaction`].

pub mod appendix;
pub mod validate;

use crate::basis::{exchange_interaction, index, levels, r_first, r_second, DIM, QUTRIT};
use crate::entanglement::{negativity_of, DensityMatrix};
use crate::linalg::{hermitian_eigenvalues, hermitian_part, hermiticity_error, trace, CMat9};
use crate::{Error, Result, C64};

/// Trace drift above which a stored state is renormalized.
pub const TRACE_RENORM_TOL: f64 = 1e-9;
/// Most negative eigenvalue tolerated in a stored state.
pub const POSITIVITY_FLOOR: f64 = -1e-6;
/// Largest allowed `dt · max(α, β, γe, γd)`.
pub const MAX_STEP_RATE: f64 = 0.1;
/// Default `dt · max(α, β, γe, γd, 1)`.
pub const DEFAULT_STEP_RATE: f64 = 1e-3;
/// Agreement required between the `dt` and `dt/2` runs.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Maximum number of step halvings in [`integrate_converged`].
pub const MAX_HALVINGS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    pub gamma_e: f64,
    pub gamma_d: f64,
}

impl DecayRates {
    pub fn new(gamma_e: f64, gamma_d: f64) -> Result<Self> {
        for (name, g) in [("gamma_e", gamma_e), ("gamma_d", gamma_d)] {
            if !(g.is_finite() && g >= 0.0) {
                return Err(Error::Domain(format!("{name} = {g} must be finite and >= 0")));
            }
        }
        Ok(Self { gamma_e, gamma_d })
    }
}

/// One jump operator `J = Σ_k |to_k⟩⟨from_k|` with its rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    pub label: &'static str,
    pub rate: f64,
    /// `(to, from)` flat-index pairs.
    pub transitions: [(usize, usize); QUTRIT],
}

impl Jump {
    pub fn matrix(&self) -> CMat9 {
        let mut m = CMat9::zeros();
        for &(to, from) in &self.transitions {
            m[(to, from)] = C64::new(1.0, 0.0);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindbladSystem {
    pub alpha: f64,
    pub beta: f64,
    pub rates: DecayRates,
    pub jumps: [Jump; 4],
    /// Diagonal of `Σ (γ/2) J†J`.
    loss: [f64; DIM],
}

impl LindbladSystem {
    pub fn new(alpha: f64, beta: f64, rates: DecayRates) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Domain(format!("non-finite coupling α={alpha}, β={beta}")));
        }
        let first = |i: usize, j: usize| std::array::from_fn(|k| (index(i, k + 1), index(j, k + 1)));
        let second = |i: usize, j: usize| std::array::from_fn(|k| (index(k + 1, i), index(k + 1, j)));
        let jumps = [
            Jump { label: "R1_13", rate: rates.gamma_e, transitions: first(1, 3) },
            Jump { label: "R1_12", rate: rates.gamma_d, transitions: first(1, 2) },
            Jump { label: "R2_13", rate: rates.gamma_e, transitions: second(1, 3) },
            Jump { label: "R2_12", rate: rates.gamma_d, transitions: second(1, 2) },
        ];
        let mut loss = [0.0; DIM];
        for j in &jumps {
            for &(_, from) in &j.transitions {
                loss[from] += 0.5 * j.rate;
            }
        }
        Ok(Self { alpha, beta, rates, jumps, loss })
    }

    /// Largest rate in the problem, used to scale the step size.
    pub fn max_rate(&self) -> f64 {
        self.alpha.abs().max(self.beta.abs()).max(self.rates.gamma_e).max(self.rates.gamma_d)
    }

    pub fn default_dt(&self) -> f64 {
        DEFAULT_STEP_RATE / self.max_rate().max(1.0)
    }

    pub fn interaction(&self) -> CMat9 {
        exchange_interaction(self.alpha, self.beta)
    }

    /// Right-hand side `dρ/dt`, exploiting the sparsity of `V` and the jumps.
    pub fn rhs(&self, rho: &CMat9) -> CMat9 {
        let i = C64::new(0.0, 1.0);
        let (a, b) = (self.alpha, self.beta);
        // Exchange partners: V|k⟩ = −g |partner(k)⟩.
        const P12: (usize, usize) = (index(1, 2), index(2, 1));
        const P23: (usize, usize) = (index(2, 3), index(3, 2));
        let partner = |k: usize| -> Option<(usize, f64)> {
            match k {
                _ if k == P12.0 => Some((P12.1, a)),
                _ if k == P12.1 => Some((P12.0, a)),
                _ if k == P23.0 => Some((P23.1, b)),
                _ if k == P23.1 => Some((P23.0, b)),
                _ => None,
            }
        };
        let mut out = CMat9::zeros();
        for r in 0..DIM {
            for c in 0..DIM {
                // −i(Vρ − ρV) with V_{r,p} = −g.
                let mut comm = C64::new(0.0, 0.0);
                if let Some((p, g)) = partner(r) {
                    comm -= rho[(p, c)] * g;
                }
                if let Some((p, g)) = partner(c) {
                    comm += rho[(r, p)] * g;
                }
                out[(r, c)] = -i * comm - rho[(r, c)] * (self.loss[r] + self.loss[c]);
            }
        }
        for j in &self.jumps {
            if j.rate == 0.0 {
                continue;
            }
            for &(to_r, from_r) in &j.transitions {
                for &(to_c, from_c) in &j.transitions {
                    out[(to_r, to_c)] += rho[(from_r, from_c)] * j.rate;
                }
            }
        }
        out
    }

    /// Reference right-hand side from dense operator products.
    pub fn rhs_dense(&self, rho: &CMat9) -> CMat9 {
        let i = C64::new(0.0, 1.0);
        let v = self.interaction();
        let mut out = (v * rho - rho * v) * (-i);
        let ops = [
            (self.rates.gamma_e, r_first(1, 3)),
            (self.rates.gamma_d, r_first(1, 2)),
            (self.rates.gamma_e, r_second(1, 3)),
            (self.rates.gamma_d, r_second(1, 2)),
        ];
        for (g, j) in ops {
            let jd = j.adjoint();
            let jdj = jd * j;
            out += (j * rho * jd * C64::new(2.0, 0.0) - jdj * rho - rho * jdj) * C64::new(g / 2.0, 0.0);
        }
        out
    }

    fn rk4_step(&self, rho: &CMat9, h: f64) -> CMat9 {
        let hc = |x: f64| C64::new(x, 0.0);
        let k1 = self.rhs(rho);
        let k2 = self.rhs(&(rho + k1 * hc(h / 2.0)));
        let k3 = self.rhs(&(rho + k2 * hc(h / 2.0)));
        let k4 = self.rhs(&(rho + k3 * hc(h)));
        rho + (k1 + k2 * hc(2.0) + k3 * hc(2.0) + k4) * hc(h / 6.0)
    }
}

/// Output grid and step for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub t_end: f64,
    /// Number of stored intervals; states are stored at `k·t_end/samples`.
    pub samples: usize,
    /// Requested step; `None` uses [`LindbladSystem::default_dt`]. The step
    /// actually used divides each output interval evenly and never exceeds
    /// the request.
    pub dt: Option<f64>,
}

impl IntegrationConfig {
    pub fn new(t_end: f64, samples: usize) -> Self {
        Self { t_end, samples, dt: None }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = Some(dt);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Step actually taken.
    pub dt: f64,
    pub steps: usize,
    /// Worst `|tr ρ − 1|` before renormalization.
    pub max_trace_error: f64,
    /// Worst `max|ρ − ρ†|` before re-Hermitization.
    pub max_hermiticity_drift: f64,
    /// Smallest eigenvalue over all stored states.
    pub min_eigenvalue: f64,
    /// Stored states whose trace had to be renormalized.
    pub renormalizations: usize,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub negativities: Vec<f64>,
    pub diagnostics: Diagnostics,
}

/// Fixed-step RK4 integration from `rho0` over `[0, t_end]`.
pub fn integrate(sys: &LindbladSystem, rho0: &DensityMatrix, cfg: &IntegrationConfig) -> Result<Trajectory> {
    if !(cfg.t_end.is_finite() && cfg.t_end >= 0.0) {
        return Err(Error::Domain(format!("t_end = {} must be finite and >= 0", cfg.t_end)));
    }
    if cfg.samples == 0 {
        return Err(Error::Domain("samples must be >= 1".into()));
    }
    let requested = cfg.dt.unwrap_or_else(|| sys.default_dt());
    if !(requested.is_finite() && requested > 0.0) {
        return Err(Error::Domain(format!("dt = {requested} must be > 0")));
    }
    if requested * sys.max_rate() >= MAX_STEP_RATE {
        return Err(Error::Contract(format!(
            "dt·max(α, β, γe, γd) = {:e} must be below {MAX_STEP_RATE}",
            requested * sys.max_rate()
        )));
    }
    let interval = cfg.t_end / cfg.samples as f64;
    let sub = if interval == 0.0 { 1 } else { (interval / requested).ceil().max(1.0) as usize };
    let h = interval / sub as f64;

    let mut diag = Diagnostics { dt: h, min_eigenvalue: f64::INFINITY, ..Default::default() };
    let mut times = Vec::with_capacity(cfg.samples + 1);
    let mut states = Vec::with_capacity(cfg.samples + 1);
    let mut negativities = Vec::with_capacity(cfg.samples + 1);

    let mut rho = *rho0.matrix();
    for k in 0..=cfg.samples {
        if k > 0 {
            for _ in 0..sub {
                rho = sys.rk4_step(&rho, h);
            }
            diag.steps += sub;
        }
        let t = k as f64 * interval;
        diag.max_hermiticity_drift = diag.max_hermiticity_drift.max(hermiticity_error(&rho));
        rho = hermitian_part(&rho);
        let tr = trace(&rho).re;
        let drift = (tr - 1.0).abs();
        diag.max_trace_error = diag.max_trace_error.max(drift);
        if drift > TRACE_RENORM_TOL {
            log::warn!("trace drift {drift:e} at t = {t}; renormalizing");
            rho /= C64::new(tr, 0.0);
            diag.renormalizations += 1;
        }
        let min_eig = hermitian_eigenvalues(&rho)?[0];
        diag.min_eigenvalue = diag.min_eigenvalue.min(min_eig);
        if min_eig < POSITIVITY_FLOOR {
            return Err(Error::IntegrationQuality { t, min_eig, dt: h });
        }
        times.push(t);
        negativities.push(negativity_of(&rho)?.value);
        states.push(DensityMatrix::new_unchecked(rho));
    }
    Ok(Trajectory { times, states, negativities, diagnostics: diag })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    /// Step of the returned trajectory.
    pub dt: f64,
    /// Max element difference between the last two resolutions.
    pub max_difference: f64,
    pub halvings: usize,
    pub converged: bool,
}

/// Integrates at `dt` and `dt/2`, halving until stored states agree to
/// [`CONVERGENCE_TOL`] or [`MAX_HALVINGS`] is reached. Returns the finer run.
pub fn integrate_converged(
    sys: &LindbladSystem,
    rho0: &DensityMatrix,
    cfg: &IntegrationConfig,
) -> Result<(Trajectory, Convergence)> {
    let mut coarse = integrate(sys, rho0, cfg)?;
    let mut halvings = 0;
    loop {
        let finer_cfg = IntegrationConfig { dt: Some(coarse.diagnostics.dt / 2.0), ..*cfg };
        let fine = integrate(sys, rho0, &finer_cfg)?;
        halvings += 1;
        let diff = max_state_difference(&coarse, &fine);
        let converged = diff < CONVERGENCE_TOL;
        if converged || halvings == MAX_HALVINGS {
            if !converged {
                log::warn!("RK4 not converged after {halvings} halvings: {diff:e}");
            }
            let report = Convergence { dt: fine.diagnostics.dt, max_difference: diff, halvings, converged };
            return Ok((fine, report));
        }
        coarse = fine;
    }
}

fn max_state_difference(a: &Trajectory, b: &Trajectory) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .flat_map(|(x, y)| (x.matrix() - y.matrix()).iter().map(|z| z.norm()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

/// The four one-parameter scans of the decoherence study. Each fixes three of
/// `(α, β, γe, γd)` and varies the fourth over [`SCAN_VALUES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scan {
    /// `α = β = γe = 1`, `γd` varied.
    GammaD,
    /// `α = β = γd = 1`, `γe` varied.
    GammaE,
    /// `β = 1`, `γe = γd = 0.5`, `α` varied.
    Alpha,
    /// `α = 1`, `γe = γd = 0.5`, `β` varied.
    Beta,
}

pub const SCAN_VALUES: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

impl Scan {
    pub const ALL: [Scan; 4] = [Scan::GammaD, Scan::GammaE, Scan::Alpha, Scan::Beta];

    pub fn name(self) -> &'static str {
        match self {
            Scan::GammaD => "gamma_d",
            Scan::GammaE => "gamma_e",
            Scan::Alpha => "alpha",
            Scan::Beta => "beta",
        }
    }

    /// `(alpha, beta, gamma_e, gamma_d)` for one scan value.
    pub fn parameters(self, x: f64) -> (f64, f64, f64, f64) {
        match self {
            Scan::GammaD => (1.0, 1.0, 1.0, x),
            Scan::GammaE => (1.0, 1.0, x, 1.0),
            Scan::Alpha => (x, 1.0, 0.5, 0.5),
            Scan::Beta => (1.0, x, 0.5, 0.5),
        }
    }

    pub fn system(self, x: f64) -> Result<LindbladSystem> {
        let (a, b, ge, gd) = self.parameters(x);
        LindbladSystem::new(a, b, DecayRates::new(ge, gd)?)
    }
}

impl std::str::FromStr for Scan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scan::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| Error::Domain(format!("unknown scan '{s}'")))
    }
}

/// Populations `ρ_kk` of a state, 0-based.
pub fn populations(rho: &CMat9) -> [f64; DIM] {
    std::array::from_fn(|k| rho[(k, k)].re)
}

/// Probability that spin `which` (1 or 2) is in `level`.
pub fn marginal_population(rho: &CMat9, which: usize, level: usize) -> f64 {
    (0..DIM)
        .filter(|&k| {
            let (i, j) = levels(k);
            if which == 1 {
                i == level
            } else {
                j == level
            }
        })
        .map(|k| rho[(k, k)].re)
        .sum()
}
