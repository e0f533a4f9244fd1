//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gkm::actions::{cadman_xi, delta, dot, generate_schubert_basis, partial, star, SchubertBasis};
use gkm::classes::{check_gkm, class_space_by_degree, EquivariantClass};
use gkm::graph::{build_flag_graph, build_hessenberg_graph, HessenbergFunction, MomentGraph, PalaisSmale};
use gkm::poly::Polynomial;
use gkm::reps::{
    character_vector, decompose_character, default_generic_point, independence_certificate, q_classes, Action,
    CharacterTable, Independence,
};
use gkm::verify::{
    check_basis_agreement, check_cadman, check_chevalley_monk, check_dot_formula, check_dot_trivial,
    check_localization_identities, check_star_formula, check_star_regular, CheckReport,
};
use gkm::weyl::{LieType, WeylElement};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lt(s: &str) -> LieType {
    s.parse().unwrap()
}

fn flag(t: &str) -> MomentGraph {
    build_flag_graph(lt(t)).unwrap()
}

fn el(g: &MomentGraph, s: &str) -> WeylElement {
    WeylElement::parse(g.lie_type(), s).unwrap()
}

fn class(g: &MomentGraph, pairs: &[(&str, &str)]) -> EquivariantClass {
    EquivariantClass::from_strings(g, pairs).unwrap()
}

fn basis(g: &MomentGraph) -> SchubertBasis {
    generate_schubert_basis(g).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn require(r: &CheckReport, t: &str) -> Result<usize, String> {
    ensure(r.passed(), format!("{t}: {r}"))?;
    Ok(r.checked)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = flag("A2");
    let b = basis(&g);
    let figure = class(
        &g,
        &[("e", "0"), ("s1", "t1 - t2"), ("s2", "0"), ("s1 s2", "t1 - t2"), ("s2 s1", "t1 - t3"), ("w0", "t1 - t3")],
    );
    ensure(b.class(&g, &el(&g, "s1")).unwrap() == &figure, "p_s1 differs from the left panel")?;
    let right = class(
        &g,
        &[("e", "0"), ("s1", "t1 - t2"), ("s2", "0"), ("s1 s2", "t1 - t2"), ("s2 s1", "t1 - t3"), ("w0", "t2 - t3")],
    );
    let bad = check_gkm(&g, &right).unwrap();
    ensure(!bad.is_empty(), "right panel passes the edge conditions")?;
    within(start.elapsed(), Duration::from_secs(1), "A2 run")?;
    Ok(format!("{} violated edge(s) on the right panel", bad.len()))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for t in ["A2", "A3", "B2", "C2"] {
        let start = Instant::now();
        let (r, _) = check_basis_agreement(&flag(t));
        cases += require(&r, t)?;
        if t == "A3" {
            within(start.elapsed(), Duration::from_secs(10), "A3 basis")?;
        }
    }
    Ok(format!("{cases} classes agree across three routes"))
}

fn criterion_3() -> Outcome {
    let g = flag("A2");
    let b = basis(&g);
    let p = b.class(&g, &el(&g, "s1")).unwrap();
    let dot_fig = class(
        &g,
        &[("e", "t2 - t1"), ("s1", "0"), ("s2", "t2 - t1"), ("s1 s2", "0"), ("s2 s1", "t2 - t3"), ("w0", "t2 - t3")],
    );
    ensure(dot(&g, &el(&g, "s1"), p).unwrap() == dot_fig, "dot(s1, p_s1)")?;
    let star_fig = class(
        &g,
        &[("e", "t1 - t2"), ("s1", "0"), ("s2", "t1 - t3"), ("s1 s2", "t1 - t3"), ("s2 s1", "0"), ("w0", "t1 - t2")],
    );
    ensure(star(&g, p, &el(&g, "s1")).unwrap() == star_fig, "star(p_s1, s1)")?;
    let c2 = flag("C2");
    let b = basis(&c2);
    let c2_fig = class(
        &c2,
        &[
            ("e", "-2*t2"),
            ("s1", "-2*t2"),
            ("s2", "0"),
            ("s1 s2", "2*(t1 - t2)"),
            ("s2 s1", "0"),
            ("s1 s2 s1", "2*(t1 - t2)"),
            ("s2 s1 s2", "2*t1"),
            ("w0", "2*t1"),
        ],
    );
    let p = b.class(&c2, &el(&c2, "s2")).unwrap();
    ensure(dot(&c2, &el(&c2, "s2"), p).unwrap() == c2_fig, "C2 dot(s2, p_s2)")?;
    Ok("three figures reproduced".into())
}

fn criterion_4() -> Outcome {
    let mut cases = 0;
    for t in ["A2", "A3", "C2"] {
        let g = flag(t);
        cases += require(&check_dot_formula(&g, &basis(&g)), t)?;
    }
    Ok(format!("{cases} (i, w) pairs, 0 mismatches"))
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for t in ["A2", "A3"] {
        let g = flag(t);
        cases += require(&check_star_formula(&g, &basis(&g)), t)?;
    }
    Ok(format!("{cases} (i, w) pairs, 0 mismatches"))
}

/// Order of `s_i s_j`.
fn braid_order(g: &MomentGraph, i: usize, j: usize) -> usize {
    let si = WeylElement::simple_reflection(g.lie_type(), i).unwrap();
    let sj = WeylElement::simple_reflection(g.lie_type(), j).unwrap();
    let x = si.compose(&sj).unwrap();
    let mut y = x.clone();
    let mut m = 1;
    while !y.is_identity() {
        y = y.compose(&x).unwrap();
        m += 1;
    }
    m
}

type Op = fn(&MomentGraph, usize, &EquivariantClass) -> gkm::Result<EquivariantClass>;

fn alternate(g: &MomentGraph, op: Op, first: usize, second: usize, m: usize, p: &EquivariantClass) -> EquivariantClass {
    let mut c = p.clone();
    // the rightmost operator acts first; the word is first, second, first, ... of length m
    for k in (0..m).rev() {
        let i = if k % 2 == 0 { first } else { second };
        c = op(g, i, &c).unwrap();
    }
    c
}

fn criterion_6() -> Outcome {
    let g = flag("A2");
    let b = basis(&g);
    let p_s1 = b.class(&g, &el(&g, "s1")).unwrap();
    let p_e = b.class(&g, &el(&g, "e")).unwrap();
    ensure(&delta(&g, 1, p_s1).unwrap() == p_e, "delta_1 p_s1")?;
    ensure(&partial(&g, 1, p_s1).unwrap() == p_e, "partial_1 p_s1")?;
    let mut checks = 0;
    for t in ["A3", "C2"] {
        let g = flag(t);
        let b = basis(&g);
        let rank = g.lie_type().rank();
        for p in b.classes() {
            for i in 1..=rank {
                for (name, op) in [("delta", delta as Op), ("partial", partial as Op)] {
                    let once = op(&g, i, p).unwrap();
                    ensure(op(&g, i, &once).unwrap().is_zero(), format!("{t} {name}_{i} squared"))?;
                    checks += 1;
                }
                for j in 1..=rank {
                    let a = delta(&g, i, &partial(&g, j, p).unwrap()).unwrap();
                    let c = partial(&g, j, &delta(&g, i, p).unwrap()).unwrap();
                    ensure(a == c, format!("{t} delta_{i} and partial_{j} do not commute"))?;
                    checks += 1;
                    if j > i {
                        let m = braid_order(&g, i, j);
                        for (name, op) in [("delta", delta as Op), ("partial", partial as Op)] {
                            let lhs = alternate(&g, op, i, j, m, p);
                            let rhs = alternate(&g, op, j, i, m, p);
                            ensure(lhs == rhs, format!("{t} {name} braid relation ({i},{j})"))?;
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("figure pinned; {checks} nil, braid and commutation checks"))
}

fn criterion_7() -> Outcome {
    let g = flag("A3");
    let b = basis(&g);
    let start = Instant::now();
    let cases = require(&check_localization_identities(&g, &b), "A3")?;
    within(start.elapsed(), Duration::from_secs(5), "A3 sweep")?;
    ensure(cases == 24 * 24 * 3, format!("expected 1728 cases, ran {cases}"))?;
    Ok(format!("{cases} (w, v, i) triples, 0 mismatches"))
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for t in ["A2", "A3"] {
        let g = flag(t);
        cases += require(&check_chevalley_monk(&g, &basis(&g)), t)?;
    }
    Ok(format!("{cases} (i, w) pairs with ratio and closed-form checks"))
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for t in ["A2", "A3"] {
        let g = flag(t);
        cases += require(&check_cadman(&g, &basis(&g)), t)?;
    }
    let g = flag("A2");
    let xi = cadman_xi(&g, basis(&g).class(&g, &el(&g, "s1")).unwrap()).unwrap();
    ensure(xi == Polynomial::parse(3, "(2*t1 - t2 - t3)/3").unwrap(), "xi(p_s1) for A2")?;
    Ok(format!("{cases} (i, w) pairs for n = 3, 4"))
}

fn criterion_10() -> Outcome {
    for t in ["A2", "A3", "C2"] {
        let g = flag(t);
        require(&check_dot_trivial(&g, &basis(&g)), t)?;
    }
    for t in ["A2", "A3", "B2", "C2"] {
        let g = flag(t);
        require(&check_star_regular(&g, &basis(&g)), t)?;
    }
    let mut dets = Vec::new();
    for t in ["A2", "A3", "B2", "C2"] {
        let g = flag(t);
        let qs = q_classes(&g, &basis(&g)).unwrap();
        let point = default_generic_point(g.lie_type()).unwrap();
        match independence_certificate(&g, &qs, &point).unwrap() {
            Independence::Certified(_) => dets.push(t),
            Independence::Singular => return Err(format!("{t}: q-class determinant vanishes")),
        }
    }
    let g = flag("A2");
    let chi = character_vector(&g, &basis(&g), Action::Star).unwrap();
    let d = decompose_character(&chi, &CharacterTable::s3()).unwrap();
    let mults: Vec<u64> = d.iter().map(|(_, m)| *m).collect();
    ensure(mults == vec![1, 1, 2], format!("S3 decomposition {d:?}"))?;
    Ok(format!("q-class certificates for {}; S3 star = (1,1,2)", dets.join(", ")))
}

fn hess(s: &str) -> MomentGraph {
    build_hessenberg_graph(&s.parse::<HessenbergFunction>().unwrap()).unwrap()
}

/// Edges `{w, w(ab)}` for positions `a < b <= h(a)`, as unordered pairs.
fn expected_hessenberg_edges(h: &HessenbergFunction) -> BTreeSet<(String, String)> {
    let g = flag(&format!("A{}", h.n() - 1));
    let mut out = BTreeSet::new();
    for w in g.vertices() {
        for a in 1..=h.n() {
            for b in a + 1..=h.h(a) {
                let mut images: Vec<i32> = w.images().collect();
                images.swap(a - 1, b - 1);
                let x = WeylElement::new(g.lie_type(), &images).unwrap();
                let (hi, lo) = if x.length() > w.length() { (x, w.clone()) } else { (w.clone(), x) };
                out.insert((hi.to_string(), lo.to_string()));
            }
        }
    }
    out
}

fn criterion_11() -> Outcome {
    for (h, count) in [("123", 0), ("223", 3), ("233", 6), ("333", 9)] {
        let g = hess(h);
        let actual: BTreeSet<(String, String)> = g
            .edges()
            .iter()
            .map(|e| (g.vertices()[e.source].to_string(), g.vertices()[e.target].to_string()))
            .collect();
        ensure(actual.len() == count, format!("h={h}: {} edges", actual.len()))?;
        ensure(actual == expected_hessenberg_edges(&h.parse().unwrap()), format!("h={h}: edge set"))?;
    }
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D3", "D4"] {
        ensure(flag(t).palais_smale_check() == PalaisSmale::Holds, format!("{t} fails Palais-Smale"))?;
    }
    let g = hess("233");
    let PalaisSmale::Fails { edge } = g.palais_smale_check() else {
        return Err("h=233 passes Palais-Smale".into());
    };
    let e = &g.edges()[edge];
    let witness = (g.vertices()[e.source].clone(), g.vertices()[e.target].clone());
    ensure(witness == (el(&g, "s1 s2"), el(&g, "s1")), format!("counterexample edge {witness:?}"))?;
    for (h, dim) in [("123", 6), ("223", 3), ("233", 1), ("333", 1)] {
        let n = class_space_by_degree(&hess(h), 0).unwrap().len();
        ensure(n == dim, format!("h={h}: degree-0 dimension {n}, expected {dim}"))?;
    }
    Ok(format!("panels exact; counterexample edge {} -> {}", witness.0, witness.1))
}

/// Peak resident set size in bytes, where the platform reports it.
fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let g = flag("A4");
    let (agreement, b) = check_basis_agreement(&g);
    require(&agreement, "A4")?;
    require(&check_dot_formula(&g, b.as_ref().unwrap()), "A4")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "A4 pipeline")?;
    let memory = match peak_rss() {
        Some(bytes) => {
            ensure(bytes < 1 << 30, format!("peak memory {} MiB", bytes >> 20))?;
            format!("peak RSS {} MiB", bytes >> 20)
        }
        None => "peak RSS not reported by this platform".into(),
    };
    Ok(format!("A4 pipeline in {elapsed:.1?}; {memory}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("figure fidelity", criterion_1),
        ("basis triple agreement", criterion_2),
        ("action figures", criterion_3),
        ("dot formula sweep", criterion_4),
        ("star formula sweep", criterion_5),
        ("divided differences", criterion_6),
        ("localization identity sweep", criterion_7),
        ("Chevalley-Monk", criterion_8),
        ("Cadman map", criterion_9),
        ("representations", criterion_10),
        ("Hessenberg graphs", criterion_11),
        ("performance bound", criterion_12),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
