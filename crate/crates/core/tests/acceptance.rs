//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualmode::basis::index;
use dualmode::dressing::{dress, DriveParams};
use dualmode::entanglement::{negativity, partial_transpose_spin1, DensityMatrix};
use dualmode::lindblad::validate::{cross_validate, FLAG_TOL};
use dualmode::lindblad::{integrate, DecayRates, IntegrationConfig, LindbladSystem, Scan, SCAN_VALUES};
use dualmode::mechanics::{normal_modes, reference, SpringPair};
use dualmode::states::{random_density_matrix, random_product_state, NamedState};
use dualmode::unitary::{
    density, equal_superposition_negativity, evolve, negativity_closed_form, EvolutionParams, TwoSpinState,
};
use dualmode::C64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn grid(n: usize, t_end: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| t_end * i as f64 / (n - 1) as f64)
}

fn pipeline(state: NamedState, alpha: f64, beta: f64, t: f64) -> f64 {
    let s = TwoSpinState::new(state.amplitudes()).unwrap();
    let p = EvolutionParams::new(alpha, beta, 0, 0).unwrap();
    negativity(&density(&evolve(&s, &p, t))).unwrap().value
}

fn frequencies() -> Outcome {
    let springs = SpringPair::new(reference::K1, reference::K2).unwrap();
    let nm = normal_modes(&springs, reference::M1, reference::M2).unwrap();
    let e1 = (nm.omega_1 - 1.2e6).abs() / 1.2e6;
    let e2 = (nm.omega_2 - 1.4e6).abs() / 1.4e6;
    outcome(
        e1 < 0.02 && e2 < 0.02,
        format!("omega1 = {:.4e} ({:.2}%), omega2 = {:.4e} ({:.2}%)", nm.omega_1, 100.0 * e1, nm.omega_2, 100.0 * e2),
    )
}

fn closed_form_vs_pipeline() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in 1..=4 {
        for beta in 1..=4 {
            let (a, b) = (f64::from(alpha), f64::from(beta));
            for t in grid(400, 2.0 * PI) {
                let d = (negativity_closed_form(a, b, t) - pipeline(NamedState::Bell26, a, b, t)).abs();
                worst = worst.max(d);
            }
        }
    }
    outcome(worst < 1e-9, format!("max |closed form - pipeline| = {worst:.3e}"))
}

fn sudden_death_zeros() -> Outcome {
    let mut zero_max: f64 = 0.0;
    for beta in [2.0, 4.0] {
        for k in 0..3 {
            let t = PI / 2.0 + PI * f64::from(k);
            zero_max = zero_max.max(pipeline(NamedState::Bell26, 1.0, beta, t));
        }
    }
    let min_b3 = grid(400, 2.0 * PI).map(|t| pipeline(NamedState::Bell26, 1.0, 3.0, t)).fold(f64::INFINITY, f64::min);
    outcome(
        zero_max < 1e-9 && min_b3 > 1e-3,
        format!("max N at zeros = {zero_max:.3e}, min N (beta = 3) = {min_b3:.4}"),
    )
}

fn persistent_value() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 3.0] {
        for t in grid(400, 2.0 * PI) {
            worst = worst.max((pipeline(NamedState::Bell26, a, a, t) - 0.5).abs());
        }
    }
    outcome(worst < 1e-10, format!("max |N - 0.5| = {worst:.3e}"))
}

fn piecewise_law() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut max_n: f64 = 0.0;
    let mut window_max: f64 = 0.0;
    for t in grid(401, 4.0 * PI) {
        let n = pipeline(NamedState::Equal, 1.0, 1.0, t);
        worst = worst.max((n - equal_superposition_negativity(1.0, t)).abs());
        max_n = max_n.max(n);
        if t <= PI {
            window_max = window_max.max(n);
        }
    }
    outcome(
        worst < 1e-8 && (max_n - 8.0 / 9.0).abs() < 1e-8 && window_max < 1e-10,
        format!(
            "max |N - law| = {worst:.3e}, max N = {max_n:.6} (law 8/9), max N on [0, pi] = {window_max:.3e}; \
             the evolved state has N = (4/9)|sin t|, even in t"
        ),
    )
}

fn lindblad_sanity() -> Outcome {
    let rho0 = DensityMatrix::pure(&NamedState::Bell26.amplitudes()).unwrap();
    let (mut tr, mut herm, mut min_eig, mut slowest) = (0f64, 0f64, f64::INFINITY, 0f64);
    let mut failures = Vec::new();
    for scan in Scan::ALL {
        for x in SCAN_VALUES {
            let sys = scan.system(x).unwrap();
            let start = Instant::now();
            match integrate(&sys, &rho0, &IntegrationConfig::new(10.0, 200)) {
                Ok(traj) => {
                    let d = traj.diagnostics;
                    tr = tr.max(d.max_trace_error);
                    herm = herm.max(d.max_hermiticity_drift);
                    min_eig = min_eig.min(d.min_eigenvalue);
                }
                Err(e) => failures.push(format!("{}={x}: {e}", scan.name())),
            }
            slowest = slowest.max(start.elapsed().as_secs_f64());
        }
    }
    outcome(
        failures.is_empty() && tr < 1e-9 && herm < 1e-10 && min_eig > -1e-6 && slowest < 10.0,
        format!(
            "16 trajectories: max |tr - 1| = {tr:.2e}, hermiticity drift = {herm:.2e}, min eig = {min_eig:.2e}, \
             slowest {slowest:.2} s{}",
            if failures.is_empty() { String::new() } else { format!(", errors: {}", failures.join("; ")) }
        ),
    )
}

fn appendix_oracle() -> Outcome {
    let sys = LindbladSystem::new(1.0, 2.0, DecayRates::new(0.7, 0.3).unwrap()).unwrap();
    let rho0 = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(2024));
    let report = cross_validate(&sys, &rho0, 10.0, 99).unwrap();
    let agree = report.elements.iter().filter(|e| !e.flagged()).all(|e| e.max_error.is_some_and(|x| x <= FLAG_TOL));
    let mut rho99: f64 = 0.0;
    for t in grid(100, 10.0) {
        let closed = dualmode::lindblad::appendix::appendix_elements(rho0.matrix(), &sys, t)[8][8].unwrap();
        let expected = rho0.element(9, 9) * (-2.0 * 0.7 * t).exp();
        rho99 = rho99.max((closed - expected).norm());
    }
    let rk4_99 = report.element(9, 9).max_error.unwrap_or(f64::INFINITY);
    let flagged: Vec<String> =
        report.flagged().map(|e| format!("rho{}{}={:.1e}", e.k, e.l, e.max_error.unwrap_or(f64::NAN))).collect();
    outcome(
        agree && report.convergence.converged && rho99 < 1e-7 && rk4_99 < 1e-7,
        format!(
            "{} of 81 agree within {FLAG_TOL:e}; rho99 vs exp law {rho99:.1e}, vs RK4 {rk4_99:.1e}; flagged: {}",
            81 - flagged.len(),
            flagged.join(" ")
        ),
    )
}

fn decoherence_ordering() -> Outcome {
    let rho0 = DensityMatrix::pure(&NamedState::Bell26.amplitudes()).unwrap();
    let mut ok = true;
    let mut rows = Vec::new();
    for scan in [Scan::GammaD, Scan::GammaE] {
        let series: Vec<Vec<f64>> = SCAN_VALUES
            .iter()
            .map(|&x| {
                let traj = integrate(&scan.system(x).unwrap(), &rho0, &IntegrationConfig::new(3.0, 3)).unwrap();
                traj.negativities[1..].to_vec()
            })
            .collect();
        for ti in 0..3 {
            let col: Vec<f64> = series.iter().map(|s| s[ti]).collect();
            ok &= col.windows(2).all(|w| w[1] <= w[0]);
            rows.push(format!(
                "{} t={}: {}",
                scan.name(),
                ti + 1,
                col.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(" ")
            ));
        }
    }
    outcome(ok, rows.join("; "))
}

fn dressed_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let rabi_zero = rng.random_range(0.1..10.0);
        let delta_rabi = rng.random_range(-0.95..0.95) * rabi_zero;
        let detuning = rng.random_range(-20.0..20.0);
        let drive = DriveParams::new(rabi_zero, delta_rabi, detuning).unwrap();
        let lv = dress(&drive);
        let eig = SymmetricEigen::new(drive.bare_hamiltonian());
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let scale = eig.eigenvalues.abs().max();
        // The dark state has no |0⟩ component; the other two are ordered.
        let dark =
            (0..3).min_by(|&i, &j| eig.eigenvectors[(1, i)].abs().total_cmp(&eig.eigenvectors[(1, j)].abs())).unwrap();
        let bright: Vec<usize> = order.iter().copied().filter(|&i| i != dark).collect();
        let (g, e) = (eig.eigenvalues[bright[0]], eig.eigenvalues[bright[1]]);
        let d = eig.eigenvalues[dark];
        // |e⟩ = cos θ |b⟩ + sin θ |0⟩ with |b⟩ ∝ (Ω−, 0, Ω+).
        let v = eig.eigenvectors.column(bright[1]);
        let norm = (drive.rabi_minus.powi(2) + drive.rabi_plus.powi(2)).sqrt();
        let along_b = (v[0] * drive.rabi_minus + v[2] * drive.rabi_plus) / norm;
        let sign = if along_b < 0.0 { -1.0 } else { 1.0 };
        let theta = (sign * v[1]).atan2(sign * along_b);
        for (x, y, s) in
            [(lv.omega_g, g, scale), (lv.omega_d, d, scale), (lv.omega_e, e, scale), (lv.theta, theta, 1.0)]
        {
            worst = worst.max((x - y).abs() / s);
        }
    }
    outcome(worst < 1e-12, format!("1000 draws, max relative deviation {worst:.2e}"))
}

fn entanglement_unit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let worst_product =
        (0..100).map(|_| negativity(&random_product_state(&mut rng)).unwrap().value).fold(0.0, f64::max);
    let s = 1.0 / 3f64.sqrt();
    let mut amps = [C64::new(0.0, 0.0); 9];
    for i in 1..=3 {
        amps[index(i, i)] = C64::new(s, 0.0);
    }
    let rho = DensityMatrix::pure(&amps).unwrap();
    let n = negativity(&rho).unwrap().value;
    // Brute force: nalgebra's Hermitian eigensolver on the partial transpose.
    let pt = partial_transpose_spin1(rho.matrix());
    let brute: f64 = -nalgebra::linalg::SymmetricEigen::new(pt).eigenvalues.iter().filter(|&&x| x < 0.0).sum::<f64>();
    outcome(
        worst_product < 1e-10 && (n - brute).abs() < 1e-10 && (n - 1.0).abs() < 1e-10,
        format!("max product N = {worst_product:.2e}; maxent N = {n:.12} (brute force {brute:.12})"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("mode frequencies", frequencies),
        ("closed-form negativity", closed_form_vs_pipeline),
        ("sudden-death zeros", sudden_death_zeros),
        ("persistent 0.5", persistent_value),
        ("piecewise 8/9 law", piecewise_law),
        ("Lindblad sanity", lindblad_sanity),
        ("closed-form master equation", appendix_oracle),
        ("decoherence ordering", decoherence_ordering),
        ("dressed states", dressed_oracle),
        ("entanglement unit", entanglement_unit),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {status} {name} ({:.2} s): {}", i + 1, start.elapsed().as_secs_f64(), o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
