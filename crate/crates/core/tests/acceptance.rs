//! End-to-end acceptance checks. Each criterion prints one line:
//! `[PASS|FAIL] <id> <description> — <detail> (<runtime> / budget <budget>)`.
//!
//! Criterion 12 reruns 1–11 with four workers and compares the JSON
//! artifacts byte for byte. Runtime budgets are enforced in every build
//! profile.

use std::time::{Duration, Instant};

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use bicover::analysis::{
    column_equations, partial_derivative_span_dim, search_equidistant_system, search_min_cover, search_vanishing_gf2,
    substitution_vanishes, HomSubstitution, SearchOptions, Variant,
};
use bicover::circuits::{circuit_from_cover, computes_s2, even_construction, gf2_lift, odd_construction, reference_s2};
use bicover::covers::{delete_vertex, pairs_construction, verify_cover, BipartiteGraph, Cover, Mode};
use bicover::fields::Field;
use bicover::matrices::{
    good_from_skew, is_good, is_good_for_p, skew_family_power2, symmetric_design_matrix, Congruence, SignMatrix,
};

struct Outcome {
    pass: bool,
    detail: String,
    artifact: Value,
}

fn outcome(pass: bool, detail: impl Into<String>, artifact: Value) -> Outcome {
    Outcome { pass, detail: detail.into(), artifact }
}

/// Number of nonzero entries per row, and the common support of every pair.
fn support_profile(m: &SignMatrix) -> (Vec<usize>, Vec<usize>) {
    let n = m.order();
    let rows: Vec<usize> = (0..n).map(|i| m.row(i).iter().filter(|&&x| x != 0).count()).collect();
    let mut common = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            common.push((0..n).filter(|&c| m.get(i, c) != 0 && m.get(j, c) != 0).count());
        }
    }
    (rows, common)
}

fn c1_skew4(_w: usize) -> Outcome {
    let m = good_from_skew(&skew_family_power2(4).unwrap()).unwrap();
    let expected = vec![vec![0, 1, 1, -1], vec![-1, 0, 1, 1], vec![-1, -1, 0, -1], vec![1, -1, 1, 0]];
    let g = |a: &[usize], b: &[usize]| BipartiteGraph::new(a.to_vec(), b.to_vec()).unwrap();
    let graphs = vec![
        g(&[4, 6, 7], &[3, 5, 8]),
        g(&[1, 6, 8], &[2, 5, 7]),
        g(&[1, 3, 7], &[2, 4, 8]),
        g(&[2, 3, 6], &[1, 4, 5]),
    ];
    let cover = pairs_construction(&m).unwrap();
    let report = verify_cover(&cover, 8, Mode::Odd);
    let matrix_ok = m.rows() == expected.as_slice();
    let graphs_ok = cover.sorted().graphs() == Cover::new(8, graphs).unwrap().sorted().graphs();
    outcome(
        matrix_ok && graphs_ok && report.ok,
        format!("matrix {matrix_ok}, graphs {graphs_ok}, odd cover of K_8 {}", report.ok),
        json!({ "matrix": m.rows(), "cover": cover.to_json() }),
    )
}

fn c2_skew_family(_w: usize) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut art = Vec::new();
    for order in [4, 8, 16, 32] {
        let m = good_from_skew(&skew_family_power2(order).unwrap()).unwrap();
        let cover = pairs_construction(&m).unwrap();
        let r = verify_cover(&cover, 2 * order, Mode::Odd);
        let good = is_good(&m).ok;
        let this = good && r.ok && cover.graphs().len() == order;
        ok &= this;
        parts.push(format!("K_{}: {}", 2 * order, if this { order.to_string() } else { "FAIL".into() }));
        art.push(cover.to_json());
    }
    outcome(ok, format!("graphs per cover {}", parts.join(", ")), Value::Array(art))
}

fn c3_designs(_w: usize) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut art = Vec::new();
    for (q, order) in [(3u64, 13usize), (7, 57)] {
        let m = symmetric_design_matrix(q, Congruence::OddCover).unwrap();
        let (rows, common) = support_profile(&m);
        let q2 = (q * q) as usize;
        let arithmetic = rows.iter().all(|&x| x == q2) && common.iter().all(|&x| x == q2 - q as usize);
        let good = is_good(&m).ok;
        let cover = pairs_construction(&m).unwrap();
        let r = verify_cover(&cover, 2 * order, Mode::Odd);
        let this = m.order() == order && arithmetic && good && r.ok && cover.graphs().len() == order;
        ok &= this;
        parts.push(format!(
            "q={q}: order {}, supports {q2}/{} {arithmetic}, K_{} by {} graphs {}",
            m.order(),
            q2 - q as usize,
            2 * order,
            cover.graphs().len(),
            r.ok
        ));
        art.push(json!({ "matrix": m.rows(), "cover": cover.to_json() }));
    }
    outcome(ok, parts.join("; "), Value::Array(art))
}

fn c4_mod3(_w: usize) -> Outcome {
    let m = symmetric_design_matrix(5, Congruence::ModP(3)).unwrap();
    let good = is_good_for_p(&m, 3).unwrap().ok;
    let cover = pairs_construction(&m).unwrap();
    let r62 = verify_cover(&cover, 62, Mode::OneModP(3));
    let smaller = delete_vertex(&cover, 62).unwrap();
    let r61 = verify_cover(&smaller, 61, Mode::OneModP(3));
    let pass = m.order() == 31
        && good
        && cover.graphs().len() == 31
        && r62.ok
        && smaller.n() == 61
        && smaller.graphs().len() == 31
        && r61.ok;
    outcome(
        pass,
        format!(
            "order {}, good-for-3 {good}, K_62 by {} graphs {}, K_61 by {} graphs {}",
            m.order(),
            cover.graphs().len(),
            r62.ok,
            smaller.graphs().len(),
            r61.ok
        ),
        json!({ "k62": cover.to_json(), "k61": smaller.to_json() }),
    )
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn c5_constructions(_w: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut art = Vec::new();
    let mut checked = 0;
    let fields = [
        ("GF(5)", Field::prime(5).unwrap()),
        ("GF(13)", Field::prime(13).unwrap()),
        ("Q(i)", Field::tower(&[rat(-1)]).unwrap()),
    ];
    for (name, f) in &fields {
        for k in 0..=20 {
            let c = odd_construction(k, f).unwrap();
            checked += 1;
            if c.gate_count() != k + 1 || c.n() != 2 * k + 1 || !computes_s2(&c).unwrap().ok {
                failures.push(format!("odd {name} k={k}"));
            }
            art.push(c.to_json());
        }
    }
    let even: Vec<(String, Field, usize)> = std::iter::once(("GF(17)".to_string(), Field::prime(17).unwrap(), 5))
        .chain([1, 2, 3, 4, 6].into_iter().map(|k| ("Q".to_string(), Field::rational(), k)))
        .collect();
    for (name, f, k) in &even {
        let c = even_construction(*k, f).unwrap();
        checked += 1;
        if c.gate_count() != *k || c.n() != 2 * k || !computes_s2(&c).unwrap().ok {
            failures.push(format!("even {name} k={k}"));
        }
        art.push(c.to_json());
    }
    let detail = if failures.is_empty() {
        format!("{checked} circuits verified")
    } else {
        format!("failed: {}", failures.join(", "))
    };
    outcome(failures.is_empty(), detail, Value::Array(art))
}

fn c6_lift(_w: usize) -> Outcome {
    let m = good_from_skew(&skew_family_power2(4).unwrap()).unwrap();
    let c8 = circuit_from_cover(&pairs_construction(&m).unwrap(), &Field::prime(2).unwrap());
    let c9 = gf2_lift(&c8).unwrap();
    let ok8 = computes_s2(&c8).unwrap().ok;
    let ok9 = computes_s2(&c9).unwrap().ok;
    let pass = ok8 && ok9 && c8.gate_count() == 4 && c9.gate_count() == 4 && c9.n() == 9 && c9.is_homogeneous();
    outcome(pass, format!("S_8 {} gates {ok8}; S_9 {} gates {ok9}", c8.gate_count(), c9.gate_count()), c9.to_json())
}

fn c7_vanishing(w: usize) -> Outcome {
    let opts = SearchOptions::with_workers(w);
    let mut found = Vec::new();
    for (n, r) in [(4, 1), (5, 1), (6, 2), (7, 3), (8, 3), (9, 3)] {
        if let Some(s) = search_vanishing_gf2(n, r, &opts).unwrap() {
            found.push(json!({ "n": n, "r": r, "witness": s.to_json() }));
        }
    }
    let detail = if found.is_empty() { "all six not found".to_string() } else { format!("{} found", found.len()) };
    outcome(found.is_empty(), detail, Value::Array(found))
}

fn c8_min_cover(w: usize) -> Outcome {
    let opts = SearchOptions::with_workers(w);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut art = Vec::new();
    for n in 3..=5 {
        let (r, cover) = search_min_cover(n, Mode::ExactOnce, n, &opts).unwrap();
        let verified = verify_cover(&cover, n, Mode::ExactOnce).ok;
        ok &= r == n - 1 && verified;
        parts.push(format!("n={n}: {r}"));
        art.push(json!({ "n": n, "r": r, "cover": cover.to_json() }));
    }
    outcome(ok, parts.join(", "), Value::Array(art))
}

fn c9_equations(_w: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut disagreements = Vec::new();
    let mut vanishing = Vec::new();
    for p in [2u64, 3, 5] {
        let f = Field::prime(p).unwrap();
        let mut hits = 0;
        for trial in 0..200 {
            let r = rng.gen_range(1..=4usize);
            let free = rng.gen_range(1..=4usize);
            let n = r + free;
            let l = (0..r).map(|_| (0..free).map(|_| f.from_i64(rng.gen_range(0..p as i64))).collect()).collect();
            let s = HomSubstitution::new(&f, n, l).unwrap();
            let v = substitution_vanishes(&s);
            hits += usize::from(v);
            if column_equations(&s).ok != v {
                disagreements.push(json!({ "p": p, "trial": trial, "substitution": s.to_json() }));
            }
        }
        vanishing.push(format!("GF({p}) {hits}/200 vanishing"));
    }
    outcome(
        disagreements.is_empty(),
        format!("{} disagreements; {}", disagreements.len(), vanishing.join(", ")),
        Value::Array(disagreements),
    )
}

fn c10_derivatives(_w: usize) -> Outcome {
    let mut bad = Vec::new();
    let mut art = Vec::new();
    for m in 2..=8 {
        let d = partial_derivative_span_dim(&reference_s2(m, &Field::rational()));
        if d != m {
            bad.push(format!("Q m={m}: {d}"));
        }
        art.push(json!(["Q", m, d]));
        for p in [3u64, 5, 7] {
            let d = partial_derivative_span_dim(&reference_s2(m, &Field::prime(p).unwrap()));
            let want = if m as u64 % p == 1 { m - 1 } else { m };
            if d != want {
                bad.push(format!("GF({p}) m={m}: {d}, want {want}"));
            }
            art.push(json!([p, m, d]));
        }
    }
    let detail = if bad.is_empty() { "28 ranks match".to_string() } else { bad.join(", ") };
    outcome(bad.is_empty(), detail, Value::Array(art))
}

fn c11_equidistant(w: usize) -> Outcome {
    let opts = SearchOptions::with_workers(w);
    let odd = search_equidistant_system(2, &Field::prime(5).unwrap(), Variant::Odd, &opts).unwrap();
    let even = search_equidistant_system(2, &Field::prime(7).unwrap(), Variant::Even, &opts).unwrap();
    let art = json!([odd.as_ref().map(|s| s.to_json()), even.as_ref().map(|s| s.to_json())]);
    outcome(
        odd.is_none() && even.is_none(),
        format!(
            "k=2 GF(5) odd {}, k=2 GF(7) even {}",
            if odd.is_none() { "not found" } else { "FOUND" },
            if even.is_none() { "not found" } else { "FOUND" }
        ),
        art,
    )
}

type Criterion = (&'static str, &'static str, fn(usize) -> Outcome, u64);

const CRITERIA: [Criterion; 11] = [
    ("1", "order-4 skew matrix and its odd cover of K_8", c1_skew4, 1),
    ("2", "skew-family odd covers of K_8..K_64", c2_skew_family, 10),
    ("3", "symmetric-design odd covers, q = 3, 7", c3_designs, 30),
    ("4", "1 mod 3 cover of K_62 and K_61", c4_mod3, 30),
    ("5", "odd/even constructions compute S_n^2", c5_constructions, 60),
    ("6", "GF(2) lift S_8 -> S_9", c6_lift, 1),
    ("7", "no vanishing GF(2) substitution below the bound", c7_vanishing, 60),
    ("8", "minimum exact cover of K_n is n-1, n = 3..5", c8_min_cover, 60),
    ("9", "column equations agree with vanishing", c9_equations, 30),
    ("10", "partial-derivative span dimensions", c10_derivatives, 5),
    ("11", "equidistant systems do not exist", c11_equidistant, 60),
];

fn line(id: &str, desc: &str, pass: bool, detail: &str, took: Duration, budget: Option<u64>) -> String {
    let budget = budget.map_or(String::new(), |b| format!(" / budget {b} s"));
    format!("[{}] {id:>2} {desc} — {detail} ({:.2} s{budget})", if pass { "PASS" } else { "FAIL" }, took.as_secs_f64())
}

/// Written straight to stderr so the lines show up without `--nocapture`.
fn report(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{s}");
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    let mut artifacts = Vec::new();
    for (id, desc, run, budget) in CRITERIA {
        let start = Instant::now();
        let o = run(1);
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let pass = o.pass && in_time;
        let detail = if in_time { o.detail } else { format!("{}; over budget", o.detail) };
        report(&line(id, desc, pass, &detail, took, Some(budget)));
        if !pass {
            failures.push(id);
        }
        artifacts.push(serde_json::to_string(&o.artifact).unwrap());
    }

    let start = Instant::now();
    let differing: Vec<&str> = CRITERIA
        .iter()
        .zip(&artifacts)
        .filter(|((_, _, run, _), first)| serde_json::to_string(&run(4).artifact).unwrap() != **first)
        .map(|((id, ..), _)| *id)
        .collect();
    let detail = if differing.is_empty() {
        "artifacts of 1-11 byte-identical for workers 1 and 4".to_string()
    } else {
        format!("artifacts differ for {}", differing.join(", "))
    };
    report(&line("12", "determinism across worker counts", differing.is_empty(), &detail, start.elapsed(), None));
    if !differing.is_empty() {
        failures.push("12");
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
