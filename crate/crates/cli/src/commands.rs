//! One function per subcommand. Each returns a [`Document`]; writing it out
//! is left to [`run`].

use std::fs;
use std::path::{Path, PathBuf};

use dualmode::basis::DIM;
use dualmode::dressing::{
    effective_couplings_with_floor, persistence_residual, spin_resonator_couplings, CouplingSource, DressedSpin,
    DriveParams, EffectiveCouplings,
};
use dualmode::entanglement::{negativity, DensityMatrix};
use dualmode::linalg::hermitian_eigenvalues;
use dualmode::lindblad::validate::cross_validate;
use dualmode::lindblad::{integrate, DecayRates, IntegrationConfig, LindbladSystem};
use dualmode::mechanics::{
    free_frequencies, normal_modes, spring_constants, validity_check, CantileverGeometry, MaterialConstants,
    NormalModes, SpringPair, TipField,
};
use dualmode::states::{parse_initial_state, random_density_matrix, random_pure_state};
use dualmode::unitary::{
    density, evolve, negativity_closed_form, zero_negativity_ratio_check, EvolutionParams, TwoSpinState,
};
use dualmode::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::CliError;
use crate::format::g17;
use crate::params::{Params, Value};
use crate::spec::{Grid, Mode, RunSpec};

/// Header notes, a column line and data rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn quantity(&mut self, name: &str, value: f64, unit: &str) {
        self.push(vec![name.into(), g17(value), unit.into()]);
    }

    pub fn render(&self, spec: &RunSpec) -> String {
        let mut s = spec.header();
        for n in &self.notes {
            s.push_str("## ");
            s.push_str(n);
            s.push('\n');
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Runs a spec, writing files or returning the text for stdout.
pub fn run(spec: &RunSpec) -> Result<Option<String>, CliError> {
    if spec.mode == Mode::Sweep {
        sweep(spec)?;
        return Ok(None);
    }
    let text = compute(spec)?.render(spec);
    match &spec.output_path {
        Some(path) => {
            write_file(path, &text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

pub fn compute(spec: &RunSpec) -> Result<Document, CliError> {
    let p = &spec.params;
    match spec.mode {
        Mode::Modes => modes(p),
        Mode::Couplings => couplings(p),
        Mode::Negativity => negativity_trace(p, spec.grid.expect("grid")),
        Mode::Lindblad => lindblad(p, spec.grid.expect("grid")),
        Mode::Validate => validate(p, spec.grid.expect("grid")),
        Mode::Sweep => unreachable!("sweeps write several files"),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

fn geometry(p: &Params) -> Result<(CantileverGeometry, MaterialConstants), CliError> {
    let geom = CantileverGeometry {
        length_1: p.require("length_1")?,
        length_2: p.require("length_2")?,
        width_1: p.require("width_1")?,
        width_2: p.require("width_2")?,
        thickness_1: p.require("thickness_1")?,
        thickness_2: p.require("thickness_2")?,
        mass_1: p.require("mass_1")?,
        mass_2: p.require("mass_2")?,
        quality_1: p.require("quality_1")?,
        quality_2: p.require("quality_2")?,
    };
    let mat = MaterialConstants { young_modulus: p.require("young_modulus")?, density: p.require("density")? };
    geom.validate()?;
    Ok((geom, mat))
}

/// Beam-formula springs, with `k_1`/`k_2` taking precedence when given.
fn springs(p: &Params, geom: &CantileverGeometry, mat: &MaterialConstants) -> Result<SpringPair, CliError> {
    let beam = spring_constants(geom, mat)?;
    Ok(SpringPair::new(p.number("k_1").unwrap_or(beam.k_1), p.number("k_2").unwrap_or(beam.k_2))?)
}

fn mechanics(p: &Params) -> Result<(CantileverGeometry, MaterialConstants, SpringPair, NormalModes), CliError> {
    let (geom, mat) = geometry(p)?;
    let k = springs(p, &geom, &mat)?;
    let nm = normal_modes(&k, geom.mass_1, geom.mass_2)?;
    Ok((geom, mat, k, nm))
}

fn modes(p: &Params) -> Result<Document, CliError> {
    let (geom, mat, k, nm) = mechanics(p)?;
    let free = free_frequencies(&geom, &mat)?;
    let v = validity_check(&geom, &free, &nm);
    let (rho_m1, rho_m2) = geom.masses_from_density(&mat);
    let mut d = Document::new(&["quantity", "value", "unit"]);
    for (key, value) in [("k_1", k.k_1), ("k_2", k.k_2)] {
        let src = if p.contains(key) { "given" } else { "from the beam formula" };
        d.note(format!("{key} {src}"));
        d.quantity(key, value, "N/m");
    }
    d.quantity("nu_1_0", free.nu_1_0, "Hz");
    d.quantity("nu_2_0", free.nu_2_0, "Hz");
    d.quantity("omega_1", nm.omega_1, "1/s");
    d.quantity("omega_2", nm.omega_2, "1/s");
    d.quantity("omega_21", nm.omega_21, "1/s");
    d.quantity("big_omega_1", nm.big_omega_1, "1/s");
    d.quantity("big_omega_2", nm.big_omega_2, "1/s");
    d.quantity("kappa_1", nm.kappa_1, "");
    d.quantity("kappa_2", nm.kappa_2, "");
    d.quantity("eff_mass_1", nm.eff_mass_1, "kg");
    d.quantity("eff_mass_2", nm.eff_mass_2, "kg");
    d.quantity("zp_amp_1", nm.zp_amp_1, "m");
    d.quantity("zp_amp_2", nm.zp_amp_2, "m");
    d.quantity("density_mass_1", rho_m1, "kg");
    d.quantity("density_mass_2", rho_m2, "kg");
    d.quantity("validity_ratio_1", v.ratio_1, "");
    d.quantity("validity_ratio_2", v.ratio_2, "");
    d.note(format!("validity check {}", if v.pass { "passed" } else { "FAILED" }));
    Ok(d)
}

fn drive(p: &Params) -> Result<DriveParams, CliError> {
    let missing =
        |k: &str| CliError::Usage(format!("the physical coupling chain needs '{k}' (or give alpha and beta)"));
    let rabi = p.number("rabi_zero").ok_or_else(|| missing("rabi_zero"))?;
    let det = p.number("detuning").ok_or_else(|| missing("detuning"))?;
    Ok(match (p.number("delta_rabi"), p.number("b_field")) {
        (Some(dr), None) => DriveParams::new(rabi, dr, det)?,
        (None, Some(b)) => DriveParams::from_field(rabi, b, det)?,
        (Some(_), Some(_)) => return Err(CliError::Usage("give delta_rabi or b_field, not both".into())),
        (None, None) => return Err(missing("delta_rabi")),
    })
}

struct Chain {
    couplings: EffectiveCouplings,
    dressed: Option<DressedSpin>,
    tip: Option<TipField>,
}

fn occupations(p: &Params) -> Result<(u32, u32), CliError> {
    let conv = |k: &str| -> Result<u32, CliError> {
        u32::try_from(p.integer(k)?).map_err(|_| CliError::Usage(format!("{k} is too large")))
    };
    Ok((conv("n_1")?, conv("n_3")?))
}

/// Direct `alpha`/`beta` when both are set, otherwise the physical chain.
fn chain(p: &Params) -> Result<Chain, CliError> {
    let (n_1, n_3) = occupations(p)?;
    match (p.number("alpha"), p.number("beta")) {
        (Some(a), Some(b)) => {
            Ok(Chain { couplings: EffectiveCouplings::direct(a, b, n_1, n_3)?, dressed: None, tip: None })
        }
        (None, None) => {
            let (_, _, _, nm) = mechanics(p)?;
            let gradient = p.number("gradient").ok_or_else(|| {
                CliError::Usage("the physical coupling chain needs 'gradient' (or give alpha and beta)".into())
            })?;
            let tip = TipField::with_g_factor(gradient, p.require("g_factor")?, &nm)?;
            let ds = spin_resonator_couplings(&drive(p)?, &tip);
            let floor = p.require("resonance_floor")?;
            let couplings = effective_couplings_with_floor(&ds, &nm, n_1, n_3, floor)?;
            Ok(Chain { couplings, dressed: Some(ds), tip: Some(tip) })
        }
        _ => Err(CliError::Usage("give both alpha and beta, or neither".into())),
    }
}

fn coupling_note(c: &EffectiveCouplings) -> String {
    match c.source {
        CouplingSource::Direct => format!("couplings given directly: alpha = {}, beta = {}", g17(c.alpha), g17(c.beta)),
        CouplingSource::Physical { .. } => {
            format!("couplings from the physical chain: alpha = {}, beta = {}", g17(c.alpha), g17(c.beta))
        }
    }
}

fn couplings(p: &Params) -> Result<Document, CliError> {
    let ch = chain(p)?;
    let c = &ch.couplings;
    let mut d = Document::new(&["quantity", "value", "unit"]);
    d.note(coupling_note(c));
    if let (Some(ds), Some(tip)) = (&ch.dressed, &ch.tip) {
        d.quantity("theta", ds.levels.theta, "rad");
        d.quantity("rms_rabi", ds.levels.rms_rabi, "1/s");
        d.quantity("omega_g", ds.levels.omega_g, "1/s");
        d.quantity("omega_d", ds.levels.omega_d, "1/s");
        d.quantity("omega_e", ds.levels.omega_e, "1/s");
        d.quantity("lambda_1", tip.lambda_1, "1/s");
        d.quantity("lambda_2", tip.lambda_2, "1/s");
        d.quantity("lambda_g", ds.lambda_g, "1/s");
        d.quantity("lambda_e", ds.lambda_e, "1/s");
    }
    if let Some((d1, d2)) = c.detunings() {
        d.quantity("delta_1", d1, "1/s");
        d.quantity("delta_2", d2, "1/s");
    }
    d.quantity("alpha", c.alpha, "1/s");
    d.quantity("beta", c.beta, "1/s");
    d.quantity("persistence_residual", persistence_residual(c.alpha, c.beta)?, "");
    zero_notes(&mut d, c.alpha, c.beta);
    Ok(d)
}

fn zero_notes(d: &mut Document, alpha: f64, beta: f64) {
    match zero_negativity_ratio_check(alpha.abs(), beta.abs()) {
        Some(w) => d.note(format!(
            "negativity vanishes: alpha/beta = {}/{}, first zero t = {}, spacing {}",
            w.p,
            w.q,
            g17(w.first_zero),
            g17(w.spacing)
        )),
        None => d.note("negativity never vanishes for this alpha/beta"),
    }
}

/// Amplitudes for the pure-state evolutions.
fn initial_amplitudes(p: &Params) -> Result<[C64; DIM], CliError> {
    let name = p.text("initial").unwrap_or("bell26");
    if name == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(p.integer("seed")?);
        return Ok(random_pure_state(&mut rng));
    }
    Ok(parse_initial_state(name)?)
}

/// Density matrix for the open dynamics; `random` is a full-rank state.
fn initial_density(p: &Params) -> Result<DensityMatrix, CliError> {
    if p.text("initial") == Some("random") {
        let mut rng = ChaCha8Rng::seed_from_u64(p.integer("seed")?);
        return Ok(random_density_matrix(&mut rng));
    }
    Ok(DensityMatrix::pure(&initial_amplitudes(p)?)?)
}

fn initial_note(p: &Params) -> String {
    let name = p.text("initial").unwrap_or("bell26");
    let what = match name {
        "bell26" => " (a2 = a6 = 1/sqrt2)",
        "bell48" => " (a4 = a8 = 1/sqrt2)",
        "random" => " (seeded)",
        _ => "",
    };
    format!("initial state {name}{what}")
}

/// Grid times, plus the exact zeros of the negativity when requested.
fn negativity_times(p: &Params, grid: Grid, alpha: f64, beta: f64) -> Vec<f64> {
    let mut times: Vec<f64> = grid.times().collect();
    if p.flag("zeros") {
        if let Some(w) = zero_negativity_ratio_check(alpha.abs(), beta.abs()) {
            let step = (grid.t_end - grid.t_start) / (grid.points - 1) as f64;
            for z in w.zero_times(grid.t_end).into_iter().filter(|&z| z >= grid.t_start) {
                if !times.iter().any(|&t| (t - z).abs() <= 1e-9 * step) {
                    times.push(z);
                }
            }
            times.sort_by(f64::total_cmp);
        }
    }
    times
}

fn negativity_trace(p: &Params, grid: Grid) -> Result<Document, CliError> {
    let c = chain(p)?.couplings;
    let ev = EvolutionParams::new(c.alpha, c.beta, c.n_1, c.n_3)?;
    let psi0 = TwoSpinState::new(initial_amplitudes(p)?)?;
    let closed = matches!(p.text("initial"), Some("bell26" | "bell48"));
    let columns: &[&str] = if closed { &["t", "negativity", "closed_form"] } else { &["t", "negativity"] };
    let mut d = Document::new(columns);
    d.note(coupling_note(&c));
    d.note(initial_note(p));
    zero_notes(&mut d, c.alpha, c.beta);
    let times = negativity_times(p, grid, c.alpha, c.beta);
    if times.len() > grid.points {
        d.note(format!("{} exact zero times added to the grid", times.len() - grid.points));
    }
    for t in times {
        let n = negativity(&density(&evolve(&psi0, &ev, t)))?.value;
        let mut row = vec![g17(t), g17(n)];
        if closed {
            row.push(g17(negativity_closed_form(c.alpha, c.beta, t)));
        }
        d.push(row);
    }
    Ok(d)
}

fn system(p: &Params) -> Result<(LindbladSystem, EffectiveCouplings), CliError> {
    let c = chain(p)?.couplings;
    let rates = DecayRates::new(p.require("gamma_e")?, p.require("gamma_d")?)?;
    Ok((LindbladSystem::new(c.alpha, c.beta, rates)?, c))
}

fn lindblad(p: &Params, grid: Grid) -> Result<Document, CliError> {
    let (sys, c) = system(p)?;
    let mut rho0 = initial_density(p)?;
    let dt = p.number("dt");
    let config = |t_end: f64, samples: usize| {
        let cfg = IntegrationConfig::new(t_end, samples);
        dt.map_or(cfg, |h| cfg.with_dt(h))
    };
    if grid.t_start > 0.0 {
        let pre = integrate(&sys, &rho0, &config(grid.t_start, 1))?;
        rho0 = pre.states.last().expect("two stored states").clone();
    }
    let traj = integrate(&sys, &rho0, &config(grid.t_end - grid.t_start, grid.points - 1))?;

    let full = p.flag("full_state");
    let mut columns: Vec<String> = ["t", "negativity", "trace", "min_eig", "purity"].map(String::from).to_vec();
    if full {
        for part in ["re", "im"] {
            for k in 1..=DIM {
                for l in 1..=DIM {
                    columns.push(format!("rho_{part}_{k}_{l}"));
                }
            }
        }
    }
    let mut d = Document { columns, ..Document::default() };
    d.note(coupling_note(&c));
    d.note("the resonator occupations n_1, n_3 do not enter the master equation");
    d.note(initial_note(p));
    let diag = &traj.diagnostics;
    d.note(format!("rk4 dt {} over {} steps", g17(diag.dt), diag.steps));
    d.note(format!(
        "max trace error {:e}, max hermiticity drift {:e}, min eigenvalue {:e}, renormalizations {}",
        diag.max_trace_error, diag.max_hermiticity_drift, diag.min_eigenvalue, diag.renormalizations
    ));
    // Stored times are k·interval from the start of this run; rebuild them
    // from the grid so that the t column is exact.
    for ((t, state), n) in grid.times().zip(&traj.states).zip(&traj.negativities) {
        let m = state.matrix();
        let mut row =
            vec![g17(t), g17(*n), g17(state.trace().re), g17(hermitian_eigenvalues(m)?[0]), g17(state.purity())];
        if full {
            row.extend(m.transpose().iter().map(|z| g17(z.re)));
            row.extend(m.transpose().iter().map(|z| g17(z.im)));
        }
        d.push(row);
    }
    Ok(d)
}

fn validate(p: &Params, grid: Grid) -> Result<Document, CliError> {
    if grid.t_start != 0.0 {
        return Err(CliError::Usage("validate compares from t = 0; leave t_start at 0".into()));
    }
    let (sys, c) = system(p)?;
    let rho0 = initial_density(p)?;
    let report = cross_validate(&sys, &rho0, grid.t_end, grid.points - 1)?;
    let mut d = Document::new(&["k", "l", "max_abs_error", "status"]);
    d.note(coupling_note(&c));
    d.note(initial_note(p));
    let conv = &report.convergence;
    d.note(format!(
        "rk4 dt {} after {} halvings, last change {:e}{}",
        g17(conv.dt),
        conv.halvings,
        conv.max_difference,
        if conv.converged { "" } else { " (NOT converged)" }
    ));
    let flagged: Vec<String> = report.flagged().map(|e| format!("rho_{}{}", e.k, e.l)).collect();
    d.note(format!("flagged {} of {}: {}", flagged.len(), report.elements.len(), flagged.join(" ")));
    let unavailable = report.unavailable().count();
    if unavailable > 0 {
        d.note(format!("{unavailable} elements have a vanishing denominator here; the integrator is authoritative"));
    }
    for e in &report.elements {
        let (err, status) = match e.max_error {
            None => ("nan".to_string(), "unavailable"),
            Some(x) => (g17(x), if e.flagged() { "flagged" } else { "ok" }),
        };
        d.push(vec![e.k.to_string(), e.l.to_string(), err, status.into()]);
    }
    Ok(d)
}

/// File names of a sweep: data files, index and plot script.
pub fn sweep_paths(dir: &Path, prefix: &str, n: usize) -> (Vec<PathBuf>, PathBuf, PathBuf) {
    let data = (0..n).map(|i| dir.join(format!("{prefix}_{i:03}.csv"))).collect();
    (data, dir.join(format!("{prefix}_index.csv")), dir.join(format!("{prefix}.gp")))
}

fn sweep(spec: &RunSpec) -> Result<(), CliError> {
    let sw = spec.sweep.as_ref().expect("sweep axis");
    let prefix = spec.params.text("output").unwrap_or("sweep");
    let dir = spec.params.output_dir();
    let (data, index, script) = sweep_paths(&dir, prefix, sw.values.len());

    let point_spec = |i: usize| -> Result<RunSpec, CliError> {
        let mut params = spec.params.clone();
        for key in ["axis", "values", "task"] {
            params.remove(key);
        }
        params.insert(sw.axis, sw.values[i].clone());
        params.insert("output", Value::Text(data[i].file_name().expect("file").to_string_lossy().into_owned()));
        RunSpec::new(sw.task, params)
    };
    let results: Vec<Result<(RunSpec, Document), CliError>> = (0..sw.values.len())
        .into_par_iter()
        .map(|i| {
            let s = point_spec(i)?;
            let d = compute(&s)?;
            Ok((s, d))
        })
        .collect();

    let mut idx = Document::new(&["index", sw.axis, "file", "final_negativity"]);
    idx.note(format!("sweep of {} over {} points, task {}", sw.axis, sw.values.len(), sw.task));
    for (i, r) in results.into_iter().enumerate() {
        let (s, d) = r?;
        write_file(&data[i], &d.render(&s))?;
        let last = d.rows.last().map_or("nan".to_string(), |row| row[1].clone());
        let value = sw.values[i].render(crate::params::lookup(sw.axis).expect("axis").kind);
        let file = data[i].file_name().expect("file").to_string_lossy().into_owned();
        idx.push(vec![i.to_string(), value.split(' ').next().unwrap_or("").to_string(), file, last]);
    }
    write_file(&index, &idx.render(spec))?;
    write_file(&script, &plot_script(spec, &data))?;
    Ok(())
}

fn plot_script(spec: &RunSpec, data: &[PathBuf]) -> String {
    let sw = spec.sweep.as_ref().expect("sweep axis");
    let kind = crate::params::lookup(sw.axis).expect("axis").kind;
    let mut s = String::new();
    for line in spec.header().lines() {
        s.push_str(line);
        s.push('\n');
    }
    s.push_str("set datafile separator ','\nset key outside right\nset xlabel 't'\nset ylabel 'negativity'\n");
    let curves: Vec<String> = data
        .iter()
        .zip(&sw.values)
        .map(|(path, v)| {
            let name = path.file_name().expect("file").to_string_lossy();
            format!("'{name}' every ::1 using 1:2 with lines title '{} = {}' noenhanced", sw.axis, v.render(kind))
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&curves.join(", \\\n     "));
    s.push('\n');
    s
}
