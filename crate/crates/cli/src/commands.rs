use std::thread;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracelab_core::covers::{free_epimorphism, growth_row, presentation_complex, CoverError, GrowthRow, GrowthTable, Homology};
use tracelab_core::exact::{GfPoly, GoldenScalar, PHI_F64};
use tracelab_core::icosians::{build_binary_icosahedral, essential_representation, BinaryIcosahedral, EssentialRep, Icosian};
use tracelab_core::intmat::{smith_normal_form, IntMatrix};
use tracelab_core::jets::{
    additivity_residual, conjugates, jet_eval_poly, lambda_representation, matrix_group_closure,
    nilpotent_square_identity, random_trace_eps_jet, random_traceless, verbatim_conjugate_data, DualComplex, JetMode,
    JET_TOL,
};
use tracelab_core::numeric::Complex64;
use tracelab_core::lattice::{
    coinvariants, corrected_neighbor_sum_check, free_quotient_action, generator_coordinates, icosahedron_midpoints,
    lattice_from_vectors, neighbor_sum_identity_check, neighbor_sum_scalar, GoldenMatrix3, Icosahedron,
};
use tracelab_core::subgroups::{
    abelianization, coset_table, schreier_presentation, Presentation, Provenance, SubgroupKind, X,
};
use tracelab_core::trace::trace_polynomial;
use tracelab_core::verdict::{enumerate_words_with, rosenberger_verdict, ExceptionalSet, Witness, EXCEPTIONAL_LABELS};
use tracelab_core::words::{parse_word, GroupWord, WordError};

use crate::presfile::{parse_presentation, write_presentation, NamedPresentation};
use crate::report::*;

/// Errors that make a command exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

pub fn scalar_str(g: &GoldenScalar) -> String {
    g.to_string()
}

pub fn poly_json(f: &GfPoly) -> PolyJson {
    PolyJson { coefficients: f.coeffs().iter().map(scalar_str).collect(), text: f.to_string() }
}

fn icosian_json(q: &Icosian) -> IcosianJson {
    let c = q.coords();
    IcosianJson {
        coords: [scalar_str(&c[0]), scalar_str(&c[1]), scalar_str(&c[2]), scalar_str(&c[3])],
        trace: scalar_str(&q.trace_golden()),
    }
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckJson {
    CheckJson { name: name.into(), pass, detail: detail.into() }
}

fn complex_json(z: Complex64) -> ComplexJson {
    ComplexJson { re: z.re, im: z.im }
}

pub fn parse_word_arg(text: &str) -> Result<GroupWord, CliError> {
    parse_word(text).map_err(|e| {
        let kind = match e {
            WordError::SyntaxError { .. } => "SyntaxError",
            WordError::EmptyAfterReduction => "EmptyAfterReduction",
            WordError::NotAlternatingReducible { .. } => "NotAlternatingReducible",
        };
        CliError::Parse(format!("cannot parse word '{text}': {kind}: {e}"))
    })
}

/// Accepts the exceptional labels `0`, `1`, `phi`, `phi-1` and any exact scalar.
pub fn parse_alpha(text: &str) -> Result<GoldenScalar, CliError> {
    let omega = ExceptionalSet::new();
    if let Some(i) = EXCEPTIONAL_LABELS.iter().position(|l| *l == text.trim()) {
        return Ok(omega.values()[i].clone());
    }
    text.parse().map_err(|_| CliError::Parse(format!("cannot parse '{text}' as an element of Q(sqrt 5)")))
}

fn alpha_label(a: &GoldenScalar) -> String {
    let omega = ExceptionalSet::new();
    omega
        .values()
        .iter()
        .position(|v| v == a)
        .map(|i| EXCEPTIONAL_LABELS[i].to_string())
        .unwrap_or_else(|| scalar_str(a))
}

fn render_gw(w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&l| {
            let s = if l.abs() == X { "x" } else { "y" };
            if l > 0 {
                s.to_string()
            } else {
                format!("{s}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn homology_json(h: Homology) -> HomologyJson {
    HomologyJson { h0: h.h0, h1: h.h1, h2: h.h2 }
}

fn abelian_json(p: &Presentation) -> AbelianJson {
    let ab = abelianization(p);
    AbelianJson { torsion: ab.torsion.iter().map(|t| t.to_string()).collect(), free_rank: ab.free_rank, text: ab.to_string() }
}

fn subgroup_report(
    group: &BinaryIcosahedral,
    w: &GroupWord,
    rep: &EssentialRep,
    kind: SubgroupKind,
    with_relators: bool,
) -> Result<(SubgroupReport, Presentation), String> {
    let table = coset_table(group, rep, kind).map_err(|e| e.to_string())?;
    let p = schreier_presentation(&table, w).map_err(|e| e.to_string())?;
    let (a, b, c, d) = p.census();
    let k = presentation_complex(&p);
    let l = k.without_faces(Provenance::FromW2Square);
    let report = SubgroupReport {
        word: w.to_string(),
        alpha: scalar_str(&rep.alpha),
        subgroup: match kind {
            SubgroupKind::C => "C".into(),
            SubgroupKind::V => "V".into(),
        },
        index: table.index(),
        generators: p.generators,
        census: CensusJson { from_x3: a, from_y5: b, from_w2_pair: c, from_w2_square: d },
        euler_k: k.euler_characteristic(),
        euler_l: l.euler_characteristic(),
        abelianization: abelian_json(&p),
        conjugator: p.conjugator.as_deref().map(render_gw),
        square_roots: p.square_roots.iter().map(|s| Presentation::render_word(s)).collect(),
        relators: if with_relators {
            p.relators
                .iter()
                .map(|r| RelatorJson { provenance: r.provenance.name().into(), word: Presentation::render_word(&r.word) })
                .collect()
        } else {
            Vec::new()
        },
        error: None,
    };
    Ok((report, p))
}

fn shifted_jet(w: &GroupWord, tau: &GfPoly, alpha: &GoldenScalar) -> JetJson {
    let r = lambda_representation(w, alpha, JetMode::Shifted);
    let value = tau.eval(alpha);
    let slope = tau.derivative().eval(alpha);
    let (v, s) = (value.to_f64(), slope.to_f64());
    let scale = v.abs().max(s.abs()).max(1.0);
    let err = ((r.tr_w.value - v).norm().max((r.tr_w.slope - s).norm())) / scale;
    JetJson {
        alpha: scalar_str(alpha),
        mode: JetMode::Shifted.name().into(),
        tr_value: complex_json(r.tr_w.value),
        tr_slope: complex_json(r.tr_w.slope),
        expected_value: Some(scalar_str(&value)),
        expected_slope: Some(scalar_str(&slope)),
        max_error: Some(err),
    }
}

fn verbatim_checks() -> (JetJson, CheckJson) {
    let xy = GroupWord::from_pairs(&[(1, 1)]);
    let r = lambda_representation(&xy, &GoldenScalar::zero(), JetMode::Verbatim);
    let j = JetJson {
        alpha: scalar_str(&GoldenScalar::zero()),
        mode: JetMode::Verbatim.name().into(),
        tr_value: complex_json(r.tr_w.value),
        tr_slope: complex_json(r.tr_w.slope),
        expected_value: None,
        expected_slope: None,
        max_error: None,
    };
    let c = match nilpotent_square_identity(&r.w) {
        Ok(ns) => check("(XY)^2 = -I + e Z in verbatim mode", true, format!("residual {:.3e}", ns.residual)),
        Err(e) => check("(XY)^2 = -I + e Z in verbatim mode", false, e.to_string()),
    };
    (j, c)
}

fn random_jet_check(rng: &mut ChaCha8Rng, samples: usize) -> CheckJson {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..samples {
        match nilpotent_square_identity(&random_trace_eps_jet(rng)) {
            Ok(ns) => worst = worst.max(ns.residual),
            Err(_) => failures += 1,
        }
    }
    check(
        format!("M^2 = -I + e Z for {samples} random trace-e jets"),
        failures == 0,
        format!("{failures} failures, worst residual {worst:.3e}"),
    )
}

pub fn analyze(input: &str, deep: bool, seed: u64) -> Result<Outcome, CliError> {
    let w = parse_word_arg(input)?;
    let v = rosenberger_verdict(&w);
    let labels = EXCEPTIONAL_LABELS;
    let roots = RootsJson {
        exceptional: v
            .report
            .multiplicities
            .iter()
            .zip(labels)
            .map(|((a, m), l)| RootJson { alpha: scalar_str(a), label: l.into(), multiplicity: *m })
            .collect(),
        residual: poly_json(&v.report.residual),
        residual_degree: v.report.residual_degree,
        degree: v.report.degree,
    };
    let witness = match &v.witness {
        Witness::Residual(r) => WitnessJson::Residual { polynomial: poly_json(r) },
        Witness::MultipleRoot(a) => WitnessJson::MultipleRoot { root: scalar_str(a) },
        Witness::SimpleRoots(rs) => WitnessJson::SimpleRoots { roots: rs.iter().map(scalar_str).collect() },
    };
    let verdict = VerdictJson { tag: v.tag.name().into(), witness, citation: v.citation().map(Into::into) };
    let mut passed = true;
    let deep = if deep {
        let group = build_binary_icosahedral().map_err(|e| CliError::Input(e.to_string()))?;
        let mut d = DeepJson { representations: Vec::new(), subgroups: Vec::new(), jets: Vec::new(), checks: Vec::new() };
        for (alpha, m) in &v.report.multiplicities {
            if *m == 0 {
                continue;
            }
            match essential_representation(&group, &w, alpha) {
                Ok(rep) => {
                    d.checks.push(check(
                        format!("image of the representation at alpha = {} is A5", alpha_label(alpha)),
                        rep.image_order == 60,
                        format!("image order {}", rep.image_order),
                    ));
                    d.representations.push(RepresentationJson {
                        alpha: scalar_str(alpha),
                        x: Some(icosian_json(&rep.x)),
                        y: Some(icosian_json(&rep.y)),
                        w_image: Some(icosian_json(&rep.w_image)),
                        image_order: Some(rep.image_order),
                        error: None,
                    });
                    match subgroup_report(&group, &w, &rep, SubgroupKind::C, false) {
                        Ok((s, _)) => d.subgroups.push(s),
                        Err(e) => d.checks.push(check("Schreier presentation", false, e)),
                    }
                }
                Err(e) => {
                    d.checks.push(check(format!("representation at alpha = {}", alpha_label(alpha)), false, e.to_string()));
                    d.representations.push(RepresentationJson {
                        alpha: scalar_str(alpha),
                        x: None,
                        y: None,
                        w_image: None,
                        image_order: None,
                        error: Some(e.to_string()),
                    });
                }
            }
        }
        for alpha in ExceptionalSet::new().values() {
            let j = shifted_jet(&w, &v.tau, alpha);
            let err = j.max_error.unwrap_or(0.0);
            d.checks.push(check(
                format!("jet trace of W at {} + e equals (tau, tau')", alpha_label(alpha)),
                err < JET_TOL,
                format!("relative error {err:.3e}"),
            ));
            d.jets.push(j);
        }
        let (j, c) = verbatim_checks();
        d.jets.push(j);
        d.checks.push(c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        d.checks.push(random_jet_check(&mut rng, 10));
        passed = d.checks.iter().all(|c| c.pass);
        Some(d)
    } else {
        None
    };
    let report = AnalysisReport {
        input: input.to_string(),
        word: w.to_string(),
        k: w.k(),
        tau: poly_json(&v.tau),
        roots,
        verdict,
        deep,
    };
    Ok(Outcome { report: Report::Analyze(report), passed })
}

pub const ENUMERATE_MAX_K: usize = 6;

pub fn enumerate(k_max: usize, list: bool) -> Result<Outcome, CliError> {
    if k_max == 0 || k_max > ENUMERATE_MAX_K {
        return Err(CliError::Input(format!("--kmax must be between 1 and {ENUMERATE_MAX_K}")));
    }
    let mut words = Vec::new();
    let census = enumerate_words_with(k_max, |v| {
        if list {
            words.push(WordLineJson { word: v.word.to_string(), tau: v.tau.to_string(), tag: v.tag.name().into() });
        }
    });
    let report = EnumerateReport {
        k_max,
        total: census.total,
        root_outside_omega: census.root_outside_omega,
        multiple_root: census.multiple_root,
        deferred: census.deferred,
        per_k: census
            .per_k
            .iter()
            .map(|&(k, a, b, c)| PerKJson { k, root_outside_omega: a, multiple_root: b, deferred: c })
            .collect(),
        multiple_root_witnesses: census
            .multiple_root_witnesses
            .iter()
            .map(|(w, r)| WitnessRootJson { word: w.to_string(), root: scalar_str(r) })
            .collect(),
        words,
    };
    Ok(Outcome { report: Report::Enumerate(report), passed: true })
}

pub fn verify_lemma2() -> Result<Outcome, CliError> {
    let lattice_err = |e: tracelab_core::lattice::LatticeError| CliError::Input(e.to_string());
    let mids = icosahedron_midpoints();
    let m = lattice_from_vectors(&mids).map_err(lattice_err)?;
    let mut checks = Vec::new();
    checks.push(check("midpoint lattice has rank 6", m.rank() == 6, format!("rank {}", m.rank())));
    let coords = generator_coordinates(&m, &mids).ok_or_else(|| CliError::Input("midpoint outside lattice".into()))?;
    let snf = smith_normal_form(&coords);
    let ones = snf.diag.len() == 6 && snf.diag.iter().all(|d| *d == 1.into());
    checks.push(check(
        "invariant factors of the midpoints are trivial (M = Z^6)",
        ones,
        format!("{:?}", snf.diag.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
    ));
    let c = GoldenMatrix3::half_turn_z();
    let co = coinvariants(&m, &c).map_err(lattice_err)?;
    checks.push(check(
        "M / (1 - c) M = Z_2^4 + Z^2 (elementary divisors 2,2,2,2)",
        co.torsion_u64() == vec![2, 2, 2, 2] && co.free_rank == 2,
        co.to_string(),
    ));
    let minus = IntMatrix::from_rows(&[vec![-1i64, 0], vec![0, -1]]);
    for (name, h, expect) in [
        ("a", GoldenMatrix3::half_turn_x(), &minus),
        ("b", GoldenMatrix3::half_turn_y(), &minus),
        ("c", GoldenMatrix3::half_turn_z(), &IntMatrix::identity(2)),
    ] {
        let act = free_quotient_action(&m, &c, &h).map_err(lattice_err)?;
        let sign = if expect == &minus { "-" } else { "+" };
        checks.push(check(
            format!("{name} acts as {sign}I_2 on the free quotient"),
            &act == expect,
            format!("{:?}", act.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
        ));
    }
    checks.push(check(
        "neighbour sum = (sqrt5 - 2) e for all 30 midpoints",
        neighbor_sum_identity_check(),
        "the eight neighbouring midpoints of each edge",
    ));
    let ico = Icosahedron::new();
    let scalar = neighbor_sum_scalar(&ico, &mids, 0).map(|s| scalar_str(&s)).unwrap_or_else(|| "none".into());
    let observations = vec![
        check("coinvariants under c", true, co.to_string()),
        check("neighbour sum scalar", true, format!("({scalar}) e, that is (3 + sqrt5) e")),
        check("neighbour sum = (3 + sqrt5) e for all 30 midpoints", corrected_neighbor_sum_check(), "exact"),
        check(
            "sqrt5 e lies in M for every midpoint",
            mids.iter().all(|e| m.contains(&e.scale(&GoldenScalar::sqrt5()))),
            "exact",
        ),
    ];
    let passed = checks.iter().all(|c| c.pass);
    Ok(Outcome { report: Report::VerifyLemma2(Lemma2Report { checks, observations }), passed })
}

pub fn subgroup(
    input: &str,
    alpha: Option<&str>,
    kind: SubgroupKind,
) -> Result<(Outcome, Presentation), CliError> {
    let w = parse_word_arg(input)?;
    let alpha = match alpha {
        Some(a) => parse_alpha(a)?,
        None => {
            let v = rosenberger_verdict(&w);
            let first = v.report.exceptional_roots().next().cloned();
            first.ok_or_else(|| CliError::Input(format!("tau of {w} has no exceptional root; pass --alpha")))?
        }
    };
    let group = build_binary_icosahedral().map_err(|e| CliError::Input(e.to_string()))?;
    let rep = essential_representation(&group, &w, &alpha).map_err(|e| CliError::Input(e.to_string()))?;
    let (report, p) = subgroup_report(&group, &w, &rep, kind, true).map_err(CliError::Input)?;
    Ok((Outcome { report: Report::Subgroup(report), passed: true }, p))
}

pub fn subgroup_presentation_file(p: &Presentation, word: &str) -> String {
    write_presentation(p, &format!("Reidemeister-Schreier presentation for W = {word}"))
}

/// Parses `name=u,v;name=u,v`; unlisted generators map to `(0, 0)`.
pub fn parse_assignment(text: &str, names: &[String]) -> Result<Vec<(i64, i64)>, CliError> {
    let mut out = vec![(0i64, 0i64); names.len()];
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || CliError::Parse(format!("bad assignment '{part}', expected name=u,v"));
        let (name, val) = part.split_once('=').ok_or_else(bad)?;
        let (u, v) = val.split_once(',').ok_or_else(bad)?;
        let i = names
            .iter()
            .position(|n| n == name.trim())
            .ok_or_else(|| CliError::Parse(format!("unknown generator '{}' in assignment", name.trim())))?;
        out[i] = (u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?);
    }
    Ok(out)
}

pub struct CoverOutcome {
    pub outcome: Outcome,
    pub presentation: NamedPresentation,
    pub assignment: Vec<(i64, i64)>,
}

pub fn cover(pres_text: &str, n_list: &[u64], assign: Option<&str>) -> Result<CoverOutcome, CliError> {
    let np = parse_presentation(pres_text).map_err(|e| CliError::Parse(format!("presentation file: {e}")))?;
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(CliError::Input("--n needs positive moduli".into()));
    }
    let p = &np.presentation;
    let (assignment, source) = match assign {
        Some(a) => (parse_assignment(a, &np.names)?, "explicit"),
        None => match free_epimorphism(p) {
            Some(a) => (a, "smith-normal-form"),
            None => (vec![(0, 0); p.generators], "trivial"),
        },
    };
    let rows: Vec<Result<GrowthRow, CoverError>> = thread::scope(|s| {
        let handles: Vec<_> = n_list.iter().map(|&n| { let a = &assignment; s.spawn(move || growth_row(p, a, n)) }).collect();
        handles.into_iter().map(|h| h.join().expect("cover worker panicked")).collect()
    });
    let rows: Vec<GrowthRow> = rows.into_iter().collect::<Result<_, _>>().map_err(|e| CliError::Input(e.to_string()))?;
    let h1_grows = GrowthTable { rows: rows.clone() }.h1_grows();
    let report = CoverReport {
        generators: p.generators,
        relators: p.relators.len(),
        squared_relators: p.relators.iter().filter(|r| r.provenance == Provenance::FromW2Square).count(),
        assignment_source: source.into(),
        assignment: np
            .names
            .iter()
            .zip(&assignment)
            .map(|(g, &(u, v))| AssignmentJson { generator: g.clone(), u, v })
            .collect(),
        rows: rows
            .iter()
            .map(|r| CoverRowJson { n: r.n, k: homology_json(r.k), l: homology_json(r.l), connected: r.connected })
            .collect(),
        h1_grows,
        note: "finite-level evidence only; nothing is certified about the infinite cover".into(),
    };
    Ok(CoverOutcome { outcome: Outcome { report: Report::Cover(report), passed: true }, presentation: np, assignment })
}

pub fn cover_csv(r: &CoverReport) -> String {
    let mut out = String::from("n,k_h0,k_h1,k_h2,l_h0,l_h1,l_h2,connected\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n, row.k.h0, row.k.h1, row.k.h2, row.l.h0, row.l.h1, row.l.h2, row.connected
        ));
    }
    out
}

pub fn jets_check(input: &str, samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let w = parse_word_arg(input)?;
    let tau = trace_polynomial(&w);
    let mut checks = Vec::new();
    let mut jets = Vec::new();
    let mut worst_eval = 0.0f64;
    for alpha in ExceptionalSet::new().values() {
        let j = jet_eval_poly(&tau, alpha);
        let expect = DualComplex::new(
            tau.eval(alpha).to_f64().into(),
            tau.derivative().eval(alpha).to_f64().into(),
        );
        worst_eval = worst_eval.max(j.dist(expect) / expect.value.norm().max(expect.slope.norm()).max(1.0));
        jets.push(shifted_jet(&w, &tau, alpha));
    }
    checks.push(check("jet evaluation of tau equals (tau, tau') at all four alpha", worst_eval < JET_TOL, format!("worst {worst_eval:.3e}")));
    let worst_rep = jets.iter().filter_map(|j| j.max_error).fold(0.0, f64::max);
    checks.push(check("trace of W in the shifted jet representation equals (tau, tau')", worst_rep < JET_TOL, format!("worst {worst_rep:.3e}")));
    let r = lambda_representation(&w, &GoldenScalar::zero(), JetMode::Shifted);
    let det_err = r.x.det().dist(DualComplex::ONE).max(r.y.det().dist(DualComplex::ONE));
    checks.push(check("det X = det Y = 1", det_err < 1e-12, format!("{det_err:.3e}")));
    let tr_err = (r.x.trace().value.norm() - 1.0).abs().max((r.y.trace().value.norm() - PHI_F64).abs());
    checks.push(check("truncated traces |tr X| = 1, |tr Y| = phi", tr_err < JET_TOL, format!("{tr_err:.3e}")));
    let (j, c) = verbatim_checks();
    jets.push(j);
    checks.push(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    checks.push(random_jet_check(&mut rng, samples));
    let worst_add = (0..samples)
        .map(|_| additivity_residual(&random_traceless(&mut rng), &random_traceless(&mut rng)))
        .fold(0.0, f64::max);
    checks.push(check(
        format!("(-I + e A)(-I + e B) = I - e (A + B) for {samples} random pairs"),
        worst_add < JET_TOL,
        format!("worst {worst_add:.3e}"),
    ));
    let (x, y, z) = verbatim_conjugate_data();
    let group = matrix_group_closure(&[x, y], 1000, 1e-7);
    let conj = conjugates(&group, &z, 1e-7);
    checks.push(check(
        "Z has 30 distinct conjugates under the lifted A5",
        group.len() == 120 && conj.len() == 30,
        format!("{} group elements, {} conjugates", group.len(), conj.len()),
    ));
    let passed = checks.iter().all(|c| c.pass);
    Ok(Outcome { report: Report::JetsCheck(JetsReport { word: w.to_string(), samples, jets, checks }), passed })
}
