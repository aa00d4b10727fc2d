//! Invariant suites behind `distill validate`, one pass/fail line per check.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use supersinglet::channels::{
    haar_su2, permute_density, supersinglet_symmetry_group, symmetrize, twirl_monte_carlo, Twirler,
};
use supersinglet::density::DensityMatrix;
use supersinglet::engine::{
    build_postselection_operator, effective_postselect_local, local_povm, FullEngine,
    SpinZeroSector, TruncatedEngine, LOCAL_SECTORS,
};
use supersinglet::half::HalfInteger;
use supersinglet::linalg::{
    apply_uniform_unitary, conjugate_uniform_unitary, cr, max_abs_diff, min_eigenvalue,
    trace_distance, CMat, CVec,
};
use supersinglet::random::{random_density, random_spin_zero_density, random_state_vector};
use supersinglet::spin_algebra::{
    apply_collective_spin, apply_s_squared, build_coupled_basis, clebsch_gordan, multiplicity, Axis,
};
use supersinglet::state_factory::{supersinglet, symmetrized_singlet_init};

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn h(t: i32) -> HalfInteger {
    HalfInteger::from_twice(t)
}

pub fn algebra_suite() -> Vec<Check> {
    let mut out = Vec::new();

    // Completeness Σ (2s+1) A(N,s) = 2^N for N ∈ [1, 8].
    let mut worst = String::new();
    let mut ok = true;
    for n in 1..=8usize {
        let mut total = 0usize;
        let mut ts = (n % 2) as i32;
        while ts <= n as i32 {
            total += (ts as usize + 1) * multiplicity(n, h(ts)).unwrap();
            ts += 2;
        }
        if total != 1 << n {
            ok = false;
            worst = format!("N={n}: {total} ≠ {}", 1usize << n);
        }
    }
    out.push(check("algebra/completeness", ok, worst));

    // Orthonormality and eigenvalue residuals for N ∈ [1, 6].
    let mut gram_dev = 0.0_f64;
    let mut eig_dev = 0.0_f64;
    for n in 1..=6usize {
        let table = build_coupled_basis(n).unwrap();
        let b = table.basis_matrix();
        let eye = CMat::identity(1 << n, 1 << n);
        gram_dev = gram_dev.max(max_abs_diff(&(b.adjoint() * &b), &eye));
        for entry in table.entries() {
            let v = entry.vector.amplitudes();
            let s2 = apply_s_squared(n, 1..=n, v);
            let sz = apply_collective_spin(Axis::Z, n, 1..=n, v);
            eig_dev = eig_dev.max((s2 - v * cr(entry.s.casimir())).norm());
            eig_dev = eig_dev.max((sz - v * cr(entry.m.value())).norm());
        }
    }
    out.push(check(
        "algebra/orthonormality",
        gram_dev < 1e-12,
        format!("max Gram deviation {gram_dev:.2e}"),
    ));
    out.push(check(
        "algebra/eigenvalue-residuals",
        eig_dev < 1e-12,
        format!("max residual {eig_dev:.2e}"),
    ));

    // Clebsch–Gordan unitarity on a small grid.
    let mut cg_dev = 0.0_f64;
    for (tj1, tj2) in [(1i32, 1i32), (2, 1), (3, 2), (4, 2)] {
        for tm in (-(tj1 + tj2)..=(tj1 + tj2)).step_by(2) {
            let js: Vec<i32> = ((tj1 - tj2).abs()..=(tj1 + tj2))
                .step_by(2)
                .filter(|tj| tm.abs() <= *tj)
                .collect();
            let m1s: Vec<i32> = (-tj1..=tj1)
                .step_by(2)
                .filter(|tm1| (tm - tm1).abs() <= tj2)
                .collect();
            if js.is_empty() {
                continue;
            }
            let k = js.len();
            let g: Vec<Vec<f64>> = m1s
                .iter()
                .map(|&tm1| {
                    js.iter()
                        .map(|&tj| {
                            clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm - tm1), h(tj), h(tm))
                        })
                        .collect()
                })
                .collect();
            for a in 0..k {
                for b in 0..k {
                    let dot: f64 = (0..k).map(|r| g[r][a] * g[r][b]).sum();
                    let expected = if a == b { 1.0 } else { 0.0 };
                    cg_dev = cg_dev.max((dot - expected).abs());
                }
            }
        }
    }
    out.push(check(
        "algebra/cg-unitarity",
        cg_dev < 1e-12,
        format!("max deviation {cg_dev:.2e}"),
    ));

    out
}

pub fn channels_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(7);

    // Monte-Carlo Haar average against the closed form, 10⁴ samples.
    let mut mc_dev = 0.0_f64;
    for n in [2usize, 3] {
        let twirler = Twirler::for_qubits(n).unwrap();
        for state_index in 0..5 {
            let rho = random_density(&mut rng, n);
            let exact = twirler.twirl(&rho).unwrap();
            let approx = twirl_monte_carlo(&rho, 10_000, 1000 + state_index).unwrap();
            mc_dev = mc_dev.max(max_abs_diff(exact.matrix(), approx.matrix()));
        }
    }
    out.push(check(
        "channels/monte-carlo-twirl",
        mc_dev < 2e-2,
        format!("max elementwise deviation {mc_dev:.3e} (bound 2e-2)"),
    ));

    // Idempotence, trace preservation, positivity, covariance.
    let mut idem = 0.0_f64;
    let mut tr_dev = 0.0_f64;
    let mut min_eig = 0.0_f64;
    let mut cov = 0.0_f64;
    for n in [2usize, 3, 4] {
        let twirler = Twirler::for_qubits(n).unwrap();
        for _ in 0..3 {
            let rho = random_density(&mut rng, n);
            let once = twirler.twirl(&rho).unwrap();
            let twice = twirler.twirl(&once).unwrap();
            idem = idem.max(max_abs_diff(once.matrix(), twice.matrix()));
            tr_dev = tr_dev.max((once.trace() - 1.0).abs());
            min_eig = min_eig.min(min_eigenvalue(once.matrix()));
            let u = haar_su2(&mut rng);
            let rotated =
                DensityMatrix::new(n, conjugate_uniform_unitary(rho.matrix(), n, &u)).unwrap();
            cov = cov.max(max_abs_diff(
                twirler.twirl(&rotated).unwrap().matrix(),
                once.matrix(),
            ));
        }
    }
    out.push(check(
        "channels/twirl-idempotence",
        idem < 1e-12,
        format!("max deviation {idem:.2e}"),
    ));
    out.push(check(
        "channels/twirl-trace",
        tr_dev < 1e-12,
        format!("max trace deviation {tr_dev:.2e}"),
    ));
    out.push(check(
        "channels/twirl-positivity",
        min_eig > -1e-10,
        format!("min eigenvalue {min_eig:.2e}"),
    ));
    out.push(check(
        "channels/twirl-covariance",
        cov < 1e-10,
        format!("max deviation {cov:.2e}"),
    ));

    // Two-qubit output has the singlet/triplet mixture form.
    let twirler = Twirler::for_qubits(2).unwrap();
    let rho = random_density(&mut rng, 2);
    let outp = twirler.twirl(&rho).unwrap();
    let table = twirler.table();
    let singlet = &table.entry(h(0), 1, h(0)).unwrap().vector;
    let f = rho.expectation_with(singlet);
    let mut expected = singlet.amplitudes() * singlet.amplitudes().adjoint() * cr(f);
    for m in h(2).projections() {
        let v = table.entry(h(2), 1, m).unwrap().vector.amplitudes();
        expected += v * v.adjoint() * cr((1.0 - f) / 3.0);
    }
    let werner_dev = max_abs_diff(outp.matrix(), &expected);
    out.push(check(
        "channels/two-qubit-werner-form",
        werner_dev < 1e-12,
        format!("deviation {werner_dev:.2e}"),
    ));

    // Symmetrizer: idempotent, commutes with the group.
    let group = supersinglet_symmetry_group(4).unwrap();
    let rho = random_density(&mut rng, 4);
    let once = symmetrize(&rho, &group).unwrap();
    let twice = symmetrize(&once, &group).unwrap();
    let mut sym_dev = max_abs_diff(once.matrix(), twice.matrix());
    for sigma in &group {
        sym_dev = sym_dev.max(max_abs_diff(
            permute_density(sigma, &once).unwrap().matrix(),
            once.matrix(),
        ));
    }
    out.push(check(
        "channels/symmetrizer",
        sym_dev < 1e-12,
        format!("max deviation {sym_dev:.2e}"),
    ));

    out
}

pub fn engine_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(8);

    // POVM completeness on the local space.
    let mut sum = CMat::zeros(8, 8);
    for (tj, alpha) in LOCAL_SECTORS {
        let el = local_povm(h(tj), alpha).unwrap();
        sum += el.matrix.adjoint() * &el.matrix;
    }
    let povm_dev = max_abs_diff(&sum, &CMat::identity(8, 8));
    out.push(check(
        "engine/povm-completeness",
        povm_dev < 1e-12,
        format!("deviation {povm_dev:.2e}"),
    ));

    // Local intertwiner M U^{⊗3} = U M.
    let m = effective_postselect_local();
    let mut local_dev = 0.0_f64;
    for _ in 0..20 {
        let u = haar_su2(&mut rng);
        for col in 0..8 {
            let mut e = CVec::zeros(8);
            e[col] = cr(1.0);
            let lhs = &m * apply_uniform_unitary(&e, 3, &u);
            let rhs = &u * (&m * &e);
            local_dev = local_dev.max((lhs - rhs).norm());
        }
    }
    out.push(check(
        "engine/local-intertwiner",
        local_dev < 1e-10,
        format!("max deviation {local_dev:.2e}"),
    ));

    // Global intertwiner on random vectors.
    let mut global_dev = 0.0_f64;
    for n in [2usize, 4] {
        let op = build_postselection_operator(n).unwrap();
        for _ in 0..10 {
            let u = haar_su2(&mut rng);
            let v = random_state_vector(&mut rng, 3 * n);
            let lhs = op
                .apply(&apply_uniform_unitary(v.amplitudes(), 3 * n, &u))
                .unwrap();
            let rhs = apply_uniform_unitary(&op.apply(v.amplitudes()).unwrap(), n, &u);
            global_dev = global_dev.max((lhs - rhs).norm());
        }
    }
    out.push(check(
        "engine/global-intertwiner",
        global_dev < 1e-10,
        format!("max deviation {global_dev:.2e}"),
    ));

    // Fixed points.
    let mut fix_dev = 0.0_f64;
    for n in [2usize, 4] {
        let engine = FullEngine::new(n).unwrap();
        let rho = DensityMatrix::from_pure(&supersinglet(n).unwrap());
        let (next, _) = engine.step(&rho).unwrap();
        fix_dev = fix_dev.max(trace_distance(next.matrix(), rho.matrix()));
    }
    out.push(check(
        "engine/fixed-point-full",
        fix_dev < 1e-10,
        format!("max trace distance {fix_dev:.2e}"),
    ));

    let mut fix_dev = 0.0_f64;
    for n in [2usize, 4, 6] {
        let engine = TruncatedEngine::new(n).unwrap();
        let state = engine
            .project(&DensityMatrix::from_pure(&supersinglet(n).unwrap()))
            .unwrap();
        let (next, _) = engine.step(&state).unwrap();
        fix_dev = fix_dev.max(max_abs_diff(next.matrix(), state.matrix()));
    }
    out.push(check(
        "engine/fixed-point-truncated",
        fix_dev < 1e-10,
        format!("max deviation {fix_dev:.2e}"),
    ));

    // Truncated/full agreement on random spin-zero inputs at N = 4.
    let truncated = TruncatedEngine::new(4).unwrap();
    let full = FullEngine::new(4).unwrap();
    let mut state_dev = 0.0_f64;
    let mut p_dev = 0.0_f64;
    for _ in 0..10 {
        let state = random_spin_zero_density(&mut rng, truncated.sector()).unwrap();
        let dense = truncated.expand(&state);
        let (full_out, fs) = full.step(&dense).unwrap();
        let (trunc_out, ts) = truncated.step(&state).unwrap();
        state_dev = state_dev.max(trace_distance(
            full_out.matrix(),
            truncated.expand(&trunc_out).matrix(),
        ));
        p_dev = p_dev
            .max((fs.success_probability - ts.success_probability).abs() / fs.success_probability);
    }
    out.push(check(
        "engine/truncated-full-agreement",
        state_dev < 1e-10 && p_dev < 1e-10,
        format!("state {state_dev:.2e}, probability {p_dev:.2e}"),
    ));

    // Sector preservation under the full engine.
    let sector = SpinZeroSector::build(4).unwrap();
    let (stepped, _) = full.step(&symmetrized_singlet_init(4).unwrap()).unwrap();
    let leak = 1.0 - sector.sector_population(&stepped);
    out.push(check(
        "engine/sector-preservation",
        leak < 1e-10,
        format!("out-of-sector population {leak:.2e}"),
    ));

    out
}

pub fn suite(name: &str) -> Option<Vec<Check>> {
    match name {
        "algebra" => Some(algebra_suite()),
        "channels" => Some(channels_suite()),
        "engine" => Some(engine_suite()),
        "all" => {
            let mut all = algebra_suite();
            all.extend(channels_suite());
            all.extend(engine_suite());
            Some(all)
        }
        _ => None,
    }
}
