use std::io::BufReader;

use shellfound::solver::checkpoint::{dump, restore};
use shellfound::solver::{assemble_shell, discrete_energy, jacobi_sweep};
use shellfound::two_body::{solve_two_body, TwoBodyGrids};
use shellfound::{solve, Field2D, Grid, Method, ModelParams, Psi0Rule, SolverConfig};

fn grid(p: &ModelParams, n: usize) -> Grid {
    Grid::foundation(p, n, Psi0Rule::Contact).unwrap()
}

#[test]
fn iterative_methods_agree_with_direct() {
    let p = ModelParams::defaults();
    let g = grid(&p, 33);
    let (d, rd) = solve(&p, &g, &SolverConfig::direct()).unwrap();
    assert!(rd.converged);
    for (method, relax) in [(Method::Jacobi, 0.6), (Method::Sor, 1.5)] {
        let cfg = SolverConfig {
            method,
            relax,
            tol: 1e-11,
            ..SolverConfig::default()
        };
        let (u, r) = solve(&p, &g, &cfg).unwrap();
        assert!(r.converged, "{method} did not converge");
        let mut diff = u.clone();
        diff.axpy(-1.0, &d);
        assert!(diff.max_abs() <= 1e-6 * d.max_abs(), "{method}: {}", diff.max_abs() / d.max_abs());
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let p = ModelParams::defaults();
    let g = grid(&p, 33);
    let run = |workers, method| {
        let cfg = SolverConfig {
            method,
            workers,
            relax: 0.6,
            max_iter: 2000,
            ..SolverConfig::default()
        };
        solve(&p, &g, &cfg).unwrap().0
    };
    for method in [Method::Jacobi, Method::Direct] {
        let a = run(1, method);
        for w in [2, 3, 8] {
            assert_eq!(a, run(w, method), "{method} with {w} workers");
        }
    }
    let tg = TwoBodyGrids::new(&p, 33).unwrap();
    let one = solve_two_body(&p, &tg, &SolverConfig { workers: 1, ..SolverConfig::direct() }).unwrap().0;
    let many = solve_two_body(&p, &tg, &SolverConfig { workers: 8, ..SolverConfig::direct() }).unwrap().0;
    assert_eq!(one, many);
}

#[test]
fn symmetric_tractions_give_symmetric_trace() {
    for p in [ModelParams::defaults(), ModelParams::figure()] {
        let g = grid(&p, 65);
        let (u, _) = solve(&p, &g, &SolverConfig::direct()).unwrap();
        let top = g.m - 1;
        let scale = u.max_abs();
        for i in 0..g.n {
            let k = g.n - 1 - i;
            assert!((u.u2(i, top) + u.u2(k, top)).abs() <= 1e-9 * scale);
            assert!((u.u3(i, top) - u.u3(k, top)).abs() <= 1e-9 * scale);
        }
    }
}

#[test]
fn checkpoint_round_trip_resumes_exactly() {
    let p = ModelParams::defaults();
    let g = grid(&p, 17);
    let cfg = SolverConfig {
        relax: 0.6,
        max_iter: 50,
        ..SolverConfig::default()
    };
    let (u, _) = solve(&p, &g, &cfg).unwrap();
    let mut buf = Vec::new();
    dump(&mut buf, &[(&g, &u)]).unwrap();
    let back = restore(BufReader::new(&buf[..])).unwrap();
    assert_eq!(back.len(), 1);
    assert_eq!(back[0].1, u);

    let (a, _) = jacobi_sweep(&u, &p, &g, 0.6).unwrap();
    let (b, _) = jacobi_sweep(&back[0].1, &p, &g, 0.6).unwrap();
    assert_eq!(a, b);
}

#[test]
fn energy_settles_along_final_iterations() {
    let p = ModelParams::defaults();
    let g = grid(&p, 17);
    let cfg = SolverConfig {
        relax: 0.6,
        tol: 1e-12,
        ..SolverConfig::default()
    };
    let (mut u, r) = solve(&p, &g, &cfg).unwrap();
    assert!(r.converged);
    let mut last = discrete_energy(&u, &p, &g).unwrap();
    for _ in 0..100 {
        u = jacobi_sweep(&u, &p, &g, 0.6).unwrap().0;
        let e = discrete_energy(&u, &p, &g).unwrap();
        assert!(e <= last + 1e-12);
        last = e;
    }
}

#[test]
fn zero_initial_guess_with_zero_load_stays_zero() {
    let p = ModelParams::defaults().with_tractions(0.0, 0.0);
    let g = grid(&p, 17);
    let (u, r) = solve(&p, &g, &SolverConfig::default()).unwrap();
    assert_eq!(u, Field2D::for_grid(&g));
    assert!(r.converged);
    assert_eq!(r.iterations, 0);
}

#[test]
fn assembled_system_has_narrow_band() {
    let p = ModelParams::defaults();
    let g = grid(&p, 33);
    let sys = assemble_shell(&p, &g).unwrap();
    let (lo, hi) = sys.a.bandwidths();
    assert!(lo <= 2 * 2 * g.n + 4 && hi <= 2 * 2 * g.n + 4);
    assert_eq!(sys.a.dim(), 2 * g.n * g.m);
}
