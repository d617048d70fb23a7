//! Acceptance criteria 1-7. Each check prints one PASS/FAIL line, each
//! criterion a summary line; the process exits non-zero if any check fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tracelab_core::covers::{
    build_finite_cover, h1_growth_experiment, homology_f2, presentation_complex, CoverSpec, Homology,
};
use tracelab_core::exact::{GfPoly, GoldenScalar, ZPhi};
use tracelab_core::icosians::{build_binary_icosahedral, essential_representation};
use tracelab_core::intmat::{smith_normal_form, IntMatrix};
use tracelab_core::jets::{
    conjugates, jet_eval_poly, lambda_representation, matrix_group_closure, nilpotent_square_identity,
    random_trace_eps_jet, verbatim_conjugate_data, JetMode,
};
use tracelab_core::lattice::{
    coinvariants, free_quotient_action, generator_coordinates, icosahedron_midpoints, lattice_from_vectors,
    neighbor_sum_identity_check, neighbor_sum_scalar, GoldenMatrix3, Icosahedron,
};
use tracelab_core::subgroups::{coset_table, schreier_presentation, Presentation, Provenance, SubgroupKind};
use tracelab_core::trace::{eval_poly_complex, numeric_trace_oracle, trace_polynomial};
use tracelab_core::verdict::{enumerate_words_with, ExceptionalSet, VerdictTag};
use tracelab_core::words::{parse_word, GroupWord};

struct Criterion {
    id: u8,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(id: u8) -> Self {
        Criterion { id, failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks += 1;
        println!("  {} [C{}] {}", if ok { "PASS" } else { "FAIL" }, self.id, name);
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    fn note(&self, text: &str) {
        println!("  info [C{}] {}", self.id, text);
    }
}

fn g(a: i64, b: i64) -> GoldenScalar {
    GoldenScalar::from_ints(a, b)
}

fn random_word(rng: &mut ChaCha8Rng, k_max: usize) -> GroupWord {
    let k = rng.random_range(1..=k_max);
    let pairs: Vec<(u8, u8)> = (0..k).map(|_| (rng.random_range(1..=2), rng.random_range(1..=4))).collect();
    GroupWord::from_pairs(&pairs)
}

fn criterion_1(c: &mut Criterion) {
    let cases = [
        ("xy", GfPoly::lambda()),
        ("x y^4", GfPoly::new(vec![g(0, 1), g(-1, 0)])),
        ("x y^2", GfPoly::new(vec![g(-1, 0), g(0, 1)])),
        ("xyxy", GfPoly::new(vec![g(-2, 0), g(0, 0), g(1, 0)])),
    ];
    for (w, expect) in cases {
        let tau = trace_polynomial(&parse_word(w).unwrap());
        c.check(&format!("tau_{{{w}}} = {expect}"), tau == expect);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let (mut deg_ok, mut worst) = (true, 0.0f64);
    for _ in 0..100 {
        let w = random_word(&mut rng, 8);
        let tau = trace_polynomial(&w);
        deg_ok &= tau.degree() == Some(w.k());
        let mut done = 0;
        while done < 3 {
            let l0 = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let Ok(num) = numeric_trace_oracle(&w, l0, 3, &mut rng) else { continue };
            let sym = eval_poly_complex(&tau, l0);
            worst = worst.max((num - sym).norm() / sym.norm().max(1.0));
            done += 1;
        }
    }
    c.check("deg tau = k for 100 random words with k <= 8", deg_ok);
    c.check(&format!("symbolic vs numeric oracle at 3 random lambda each < 1e-8 (worst {worst:.2e})"), worst < 1e-8);
}

fn criterion_2(c: &mut Criterion) {
    let group = build_binary_icosahedral().unwrap();
    let e = group.elements();
    let mut ok = true;
    for x in e {
        for y in e {
            ok &= (*x * *y).trace() + (*x * y.inverse()).trace() == x.trace() * y.trace();
        }
    }
    c.check("tr(XY) + tr(XY^-1) = tr X tr Y for all 120^2 pairs", ok);
    let spectrum: std::collections::BTreeSet<ZPhi> = e.iter().map(|q| q.trace()).collect();
    let expected: std::collections::BTreeSet<ZPhi> = [(2, 0), (-2, 0), (1, 0), (-1, 0), (0, 0), (0, 1), (0, -1), (-1, 1), (1, -1)]
        .into_iter()
        .map(|(a, b)| ZPhi::new(a, b))
        .collect();
    c.check("trace spectrum is {+-2, +-1, 0, +-phi, +-(phi-1)}", spectrum == expected);
    c.check("exactly 30 trace-0 elements", group.trace_zero().count() == 30);
}

fn criterion_3(c: &mut Criterion) {
    let mids = icosahedron_midpoints();
    let m = lattice_from_vectors(&mids).unwrap();
    c.check("lattice rank 6", m.rank() == 6);
    let coords = generator_coordinates(&m, &mids).unwrap();
    let snf = smith_normal_form(&coords);
    c.check("invariant factors of the midpoint generators are all 1 (M = Z^6)", snf.diag == vec![BigInt::from(1); 6]);
    let cz = GoldenMatrix3::half_turn_z();
    let co = coinvariants(&m, &cz).unwrap();
    c.note(&format!("coinvariants under c = {co}"));
    c.check("SNF of (1 - c) has elementary divisors 2,2,2,2", co.torsion_u64() == vec![2, 2, 2, 2]);
    c.check("kernel rank of (1 - c) is 2", co.free_rank == 2);
    let minus = IntMatrix::from_rows(&[vec![-1i64, 0], vec![0, -1]]);
    let fa = free_quotient_action(&m, &cz, &GoldenMatrix3::half_turn_x()).unwrap();
    let fb = free_quotient_action(&m, &cz, &GoldenMatrix3::half_turn_y()).unwrap();
    let fc = free_quotient_action(&m, &cz, &cz).unwrap();
    c.check("a acts as -I_2 on the free quotient", fa == minus);
    c.check("b acts as -I_2 on the free quotient", fb == minus);
    c.check("c acts as +I_2 on the free quotient", fc == IntMatrix::identity(2));
    let ico = Icosahedron::new();
    let actual = neighbor_sum_scalar(&ico, &mids, 0).map(|s| s.to_string()).unwrap_or_default();
    c.note(&format!("neighbor sum equals ({actual}) e"));
    c.check("neighbor sum = (sqrt5 - 2) e for all 30 midpoints", neighbor_sum_identity_check());
}

fn criterion_4(c: &mut Criterion) {
    let group = build_binary_icosahedral().unwrap();
    let w = parse_word("xy").unwrap();
    let rep = essential_representation(&group, &w, &GoldenScalar::zero()).unwrap();
    let table = coset_table(&group, &rep, SubgroupKind::C).unwrap();
    c.check("Gamma has index 30", table.index() == 30);
    let p = schreier_presentation(&table, &w).unwrap();
    c.check("31 Schreier generators", p.generators == 31);
    c.check(&format!("relator census (10, 6, 14, 2), got {:?}", p.census()), p.census() == (10, 6, 14, 2));
    c.check("chi(K) = 2", presentation_complex(&p).euler_characteristic() == 2);
    let l = presentation_complex(&p).without_faces(Provenance::FromW2Square);
    c.check("chi(L) = 0", l.euler_characteristic() == 0);
    let squares: Vec<_> = p.relators.iter().filter(|r| r.provenance == Provenance::FromW2Square).collect();
    let literal = squares.len() == 2
        && squares.iter().zip(&p.square_roots).all(|(r, s)| {
            let mut ss = s.clone();
            ss.extend(s);
            !s.is_empty() && r.word == ss
        });
    c.check("s_1, s_2 rewrites are literal squares", literal);
}

fn criterion_5(c: &mut Criterion) {
    let group = build_binary_icosahedral().unwrap();
    let (mut outside_ok, mut deferred_ok, mut rep_ok, mut reps) = (true, true, true, 0usize);
    let census = enumerate_words_with(2, |v| match v.tag {
        VerdictTag::FreeByRootOutsideOmega => outside_ok &= v.report.residual_degree > 0,
        VerdictTag::DeferredPriorWork => {
            let simple = v.report.multiplicities.iter().all(|(_, m)| *m <= 1);
            let roots = v.report.multiplicities.iter().map(|(_, m)| m).sum::<usize>();
            deferred_ok &= v.word.k() <= 4 && simple && v.report.residual_degree == 0 && roots == v.word.k();
        }
        VerdictTag::FreeByMultipleRoot => {}
    });
    c.check(&format!("72 words classified (got {})", census.total), census.total == 72);
    c.check("every FreeByRootOutsideOmega has residual_degree > 0", outside_ok);
    c.check("every DeferredPriorWork has k <= 4 and only simple roots in Omega", deferred_ok);
    enumerate_words_with(2, |v| {
        for alpha in v.report.exceptional_roots() {
            reps += 1;
            rep_ok &= essential_representation(&group, &v.word, alpha).is_ok_and(|r| r.image_order == 60);
        }
    });
    c.note(&format!("{reps} (word, exceptional root) pairs; census {:?}", census.per_k));
    c.check("essential representation with image order 60 for every exceptional root", rep_ok);
}

fn criterion_6(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let omega = ExceptionalSet::new();
    let (mut worst_eval, mut worst_rep) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let w = random_word(&mut rng, 8);
        let tau = trace_polynomial(&w);
        let d = tau.derivative();
        for alpha in omega.values() {
            let expect = (tau.eval(alpha).to_f64(), d.eval(alpha).to_f64());
            let scale = expect.0.abs().max(expect.1.abs()).max(1.0);
            let j = jet_eval_poly(&tau, alpha);
            let err = (j.value - expect.0).norm().max((j.slope - expect.1).norm()) / scale;
            worst_eval = worst_eval.max(err);
            let r = lambda_representation(&w, alpha, JetMode::Shifted);
            let err = (r.tr_w.value - expect.0).norm().max((r.tr_w.slope - expect.1).norm()) / scale;
            worst_rep = worst_rep.max(err);
        }
    }
    c.check(&format!("jet evaluation = (tau(alpha), tau'(alpha)) for 50 words x 4 alpha (worst {worst_eval:.2e})"), worst_eval < 1e-9);
    c.check(&format!("tr W of the shifted jet representation agrees (worst {worst_rep:.2e})"), worst_rep < 1e-9);
    let ok = (0..100).all(|_| nilpotent_square_identity(&random_trace_eps_jet(&mut rng)).is_ok());
    c.check("M^2 = -I + e Z with tr Z = 0 for 100 random trace-e SL_2 jets", ok);
    let (x, y, z) = verbatim_conjugate_data();
    let group = matrix_group_closure(&[x, y], 1000, 1e-7);
    let conj = conjugates(&group, &z, 1e-7);
    c.note(&format!("lifted A5 has {} matrices", group.len()));
    c.check(&format!("30 distinct conjugates of Z (got {})", conj.len()), conj.len() == 30);
}

fn triple(h: Homology) -> (usize, usize, usize) {
    (h.h0, h.h1, h.h2)
}

fn criterion_7(c: &mut Criterion) {
    let torus = Presentation::new(2, vec![vec![1, 2, -1, -2]]);
    let wedge = Presentation::new(2, vec![]);
    let genus2 = Presentation::new(4, vec![vec![1, 2, -1, -2, 3, 4, -3, -4]]);
    c.check("torus base (1, 2, 1)", triple(homology_f2(&presentation_complex(&torus))) == (1, 2, 1));
    for n in [3u64, 5] {
        let cover = build_finite_cover(&presentation_complex(&torus), &CoverSpec { n, assignment: vec![(1, 0), (0, 1)] }).unwrap();
        c.check(&format!("torus Z_{n}^2 cover (1, 2, 1)"), triple(homology_f2(&cover.complex)) == (1, 2, 1));
    }
    let t = h1_growth_experiment(&wedge, &[(1, 0), (0, 1)], &[3, 5]).unwrap();
    for r in &t.rows {
        c.check(&format!("wedge Z_{}^2 cover h1 = {}", r.n, r.n * r.n + 1), r.l.h1 as u64 == r.n * r.n + 1);
    }
    let cover = build_finite_cover(
        &presentation_complex(&genus2),
        &CoverSpec { n: 2, assignment: vec![(1, 0), (0, 0), (0, 1), (0, 0)] },
    )
    .unwrap();
    c.check("genus-2 Z_2^2 cover (1, 10, 1)", triple(homology_f2(&cover.complex)) == (1, 10, 1));

    let group = build_binary_icosahedral().unwrap();
    let w = parse_word("xy").unwrap();
    let rep = essential_representation(&group, &w, &GoldenScalar::zero()).unwrap();
    let p = schreier_presentation(&coset_table(&group, &rep, SubgroupKind::C).unwrap(), &w).unwrap();
    // Gamma^ab = Z_2, so for odd n the only relator-killing assignment is trivial
    let zero = vec![(0i64, 0i64); p.generators];
    let t = h1_growth_experiment(&p, &zero, &[3, 5]).unwrap();
    for r in &t.rows {
        c.note(&format!("Gamma n={}: K-bar {:?}, L-bar {:?}", r.n, triple(r.k), triple(r.l)));
        c.check(&format!("Gamma Z_{}^2 cover h1(K-bar) = h1(L-bar)", r.n), r.k.h1 == r.l.h1);
    }
    let kc = build_finite_cover(&presentation_complex(&p), &CoverSpec::from_integer(3, &zero)).unwrap();
    c.check("lifted s_i^2 cells are bounded by squares", kc.squares_lift_to_squares());
}

type Run = fn(&mut Criterion);

fn main() {
    let criteria: [(u8, &str, Run, Duration); 7] = [
        (1, "trace engine", criterion_1, Duration::from_secs(10)),
        (2, "icosian trace identity and spectrum", criterion_2, Duration::from_secs(5)),
        (3, "edge-midpoint lattice module", criterion_3, Duration::from_secs(2)),
        (4, "index-30 subgroup presentation", criterion_4, Duration::from_secs(2)),
        (5, "verdict correctness", criterion_5, Duration::from_secs(30)),
        (6, "jets", criterion_6, Duration::from_secs(30)),
        (7, "covers", criterion_7, Duration::from_secs(30)),
    ];
    let total = Instant::now();
    let mut failed = Vec::new();
    for (id, name, run, limit) in criteria {
        let mut c = Criterion::new(id);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut c)));
        let elapsed = start.elapsed();
        if outcome.is_err() {
            c.check("criterion ran without panicking", false);
        }
        c.check(&format!("runtime {:.2}s < {}s", elapsed.as_secs_f64(), limit.as_secs()), elapsed < limit);
        let pass = c.failures.is_empty();
        println!(
            "{} criterion {id} ({name}): {}/{} checks",
            if pass { "PASS" } else { "FAIL" },
            c.checks - c.failures.len(),
            c.checks
        );
        if !pass {
            failed.push((id, c.failures));
        }
    }
    println!("total runtime {:.2}s", total.elapsed().as_secs_f64());
    if !failed.is_empty() {
        for (id, f) in &failed {
            println!("criterion {id} failed: {}", f.join("; "));
        }
        std::process::exit(1);
    }
}
