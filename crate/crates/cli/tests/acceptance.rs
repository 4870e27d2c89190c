//! Acceptance suite. Runs every criterion in order and prints one
//! `PASS`/`FAIL` line each; the test fails if any criterion fails.
//!
//! ```text
//! cargo test -p changemaker-cli --test acceptance -- --nocapture
//! ```

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use changemaker_cli::formats::{read_json, AlexanderFile, LatticeFile, PdFile};
use changemaker_core::changemaker::enumerate_changemakers;
use changemaker_core::charvec::char_norm_profile;
use changemaker_core::cmlattice::{
    build_integral, genus_of_stable, genus_slope_cap, n_invariant, slope_window,
    superbase_obstruction, StableCoefficients, SuperbaseVerdict,
};
use changemaker_core::goeritz::verify_alternating_surgery;
use changemaker_core::graphlat::{
    find_obtuse_superbase, laplacian_lattice, lattice_isomorphic, superbase_graph, Multigraph,
    SearchCertificate, SearchOptions,
};
use changemaker_core::recovery::{
    recover_rho, recover_stable, torsion_coefficients, v_sequence, AlexanderPolynomial,
    RecoveryOutcome, VSequence,
};
use changemaker_core::{is_changemaker, subset_sum_cover, ChangemakerVector, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE_SECOND: Duration = Duration::from_secs(1);
const SUPERBASE_LIMIT: Duration = Duration::from_secs(30);
const CABLE_LIMIT: Duration = Duration::from_secs(120);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(600);
const GRAPH_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn alexander(name: &str) -> AlexanderPolynomial {
    read_json::<AlexanderFile>(&fixture(name))
        .unwrap()
        .to_polynomial()
        .unwrap()
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    check(
        took < limit,
        format!("{what} took {took:?}, limit {limit:?}"),
    )
}

fn stable_of(delta: &AlexanderPolynomial) -> Result<StableCoefficients, String> {
    let v = v_sequence(delta).map_err(|e| e.to_string())?;
    match recover_stable(&v).map_err(|e| e.to_string())? {
        RecoveryOutcome::Found { stable, .. } => Ok(stable),
        RecoveryOutcome::NoSolution(w) => Err(format!("no solution: {w}")),
    }
}

fn trimmed_torsion(delta: &AlexanderPolynomial) -> Vec<i64> {
    let mut t = torsion_coefficients(delta).unwrap();
    while t.last() == Some(&0) {
        t.pop();
    }
    t
}

fn bound(b: i64) -> SearchOptions {
    SearchOptions {
        norm_bound: Some(b),
        ..Default::default()
    }
}

fn verdict(sigma: &[i64], b: i64) -> Result<(bool, Duration), String> {
    let start = Instant::now();
    let mut ascending = sigma.to_vec();
    ascending.sort();
    let lat = build_integral(&ChangemakerVector::new(ascending).unwrap()).unwrap();
    check(
        lat.gram.determinant().unwrap() == sigma.iter().map(|s| s * s).sum::<i64>(),
        format!("{sigma:?}: determinant"),
    )?;
    let cert = find_obtuse_superbase(&lat.gram, &bound(b)).map_err(|e| e.to_string())?;
    Ok((matches!(cert, SearchCertificate::Found(_)), start.elapsed()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let delta = alexander("pretzel_alexander.json");
    let torsion = trimmed_torsion(&delta);
    check(torsion == [2, 2, 1, 1, 1], format!("torsion {torsion:?}"))?;
    let stable = stable_of(&delta)?;
    check(stable.entries() == [3, 2, 2], format!("stable {stable:?}"))?;
    let n = n_invariant(&stable).unwrap();
    let window = slope_window(&stable).unwrap();
    let cap = genus_slope_cap(genus_of_stable(&stable));
    check(
        (n, window, cap) == (19, (18, 20), 23),
        format!("N={n} window={window:?} cap={cap}"),
    )?;
    within(start, ONE_SECOND, "pipeline")?;
    Ok("torsion=(2,2,1,1,1) stable=(3,2,2) N=19 window=[18,20] cap=23".into())
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for (sigma, want) in [
        (&[3, 2, 2, 1, 1, 1][..], false),
        (&[3, 2, 2, 1][..], true),
        (&[3, 2, 2, 1, 1][..], true),
    ] {
        let (found, took) = verdict(sigma, 8)?;
        check(found == want, format!("{sigma:?}: found={found}"))?;
        check(took < SUPERBASE_LIMIT, format!("{sigma:?} took {took:?}"))?;
        let norm: i64 = sigma.iter().map(|s| s * s).sum();
        notes.push(format!(
            "L{norm} {} ({} ms)",
            if found { "FOUND" } else { "NOT_FOUND" },
            took.as_millis()
        ));
    }
    // The shipped fixture files agree with the direct construction.
    let file = read_json::<LatticeFile>(&fixture("cm_20_322.json")).unwrap();
    let direct = build_integral(&ChangemakerVector::new(vec![1, 1, 1, 2, 2, 3]).unwrap()).unwrap();
    check(
        lattice_isomorphic(&file.to_gram().unwrap(), &direct.gram)
            .unwrap()
            .is_some(),
        "cm_20_322.json differs from the direct lattice",
    )?;
    Ok(format!("bound 8: {}", notes.join(", ")))
}

fn criterion_3() -> Outcome {
    let stable = stable_of(&alexander("cable_2_15_alexander.json"))?;
    check(
        stable.entries() == [4, 2, 2, 2],
        format!("stable {stable:?}"),
    )?;
    let n = n_invariant(&stable).unwrap();
    check(n == 30, format!("N={n}"))?;
    let mut notes = Vec::new();
    for ones in 1..=3 {
        let sigma = stable.padded(ones).unwrap();
        let (found, took) = verdict(sigma.entries(), 10)?;
        check(!found, format!("L{} FOUND", sigma.norm()))?;
        check(
            took < CABLE_LIMIT,
            format!("L{} took {took:?}", sigma.norm()),
        )?;
        notes.push(format!(
            "L{} NOT_FOUND ({} ms)",
            sigma.norm(),
            took.as_millis()
        ));
    }
    Ok(format!(
        "stable=(4,2,2,2) N=30, bound 10: {}",
        notes.join(", ")
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let delta = alexander("cable_2_5_alexander.json");
    let v = v_sequence(&delta).unwrap();
    let witness = match recover_stable(&v).unwrap() {
        RecoveryOutcome::NoSolution(w) => w.to_string(),
        RecoveryOutcome::Found { stable, .. } => return Err(format!("found {stable:?}")),
    };
    check(
        witness == "V0=1, g\u{303}=4 > 3",
        format!("witness `{witness}`"),
    )?;
    within(start, ONE_SECOND, "recovery")?;
    Ok(format!("NO_SOLUTION ({witness})"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let delta = alexander("cable_2_3_alexander.json");
    check(
        delta == torus_knot(3, 4),
        "fixture differs from the T(3,4) polynomial",
    )?;
    let stable = stable_of(&delta)?;
    let window = slope_window(&stable).unwrap();
    check(
        stable.entries() == [3] && window == (11, 13),
        format!("stable {stable:?} window {window:?}"),
    )?;
    within(start, ONE_SECOND, "pipeline")?;
    Ok("stable=(3) window=[11,13]".into())
}

/// `(t^{rs} - 1)(t - 1) / ((t^r - 1)(t^s - 1))`, centred.
fn torus_knot(r: usize, s: usize) -> AlexanderPolynomial {
    let mul = |a: &[i64], b: &[i64]| {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let binom = |k: usize| {
        let mut v = vec![0i64; k + 1];
        v[0] = -1;
        v[k] = 1;
        v
    };
    let mut num = mul(&binom(r * s), &binom(1));
    let den = mul(&binom(r), &binom(s));
    let q_len = num.len() - den.len() + 1;
    let mut q = vec![0i64; q_len];
    for k in (0..q_len).rev() {
        let c = num[k + den.len() - 1] / den[den.len() - 1];
        q[k] = c;
        for (j, d) in den.iter().enumerate() {
            num[k + j] -= c * d;
        }
    }
    assert!(num.iter().all(|&x| x == 0));
    let g = (q.len() as i64 - 1) / 2;
    AlexanderPolynomial::new(q.into_iter().enumerate().map(|(i, c)| (i as i64 - g, c)))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (r, s) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)] {
        let stable = stable_of(&torus_knot(r, s))?;
        let n = n_invariant(&stable).unwrap();
        check(n == (r * s) as i64, format!("T({r},{s}): N={n}"))?;
        notes.push(format!("T({r},{s}) N={n}"));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let all = enumerate_changemakers(5, 7);
    for sigma in &all {
        let rho = sigma.descending();
        let profile: Vec<i64> = char_norm_profile(&rho)
            .unwrap()
            .into_iter()
            .map(|v| v.unwrap())
            .collect();
        let v = VSequence::new(profile).unwrap();
        match recover_rho(&v, sigma.norm(), rho.len() - 1).unwrap() {
            RecoveryOutcome::Found { rho: got, .. } if got == rho => {}
            other => return Err(format!("rho={rho:?}: {other:?}")),
        }
    }
    within(start, ROUND_TRIP_LIMIT, "sweep")?;
    Ok(format!(
        "{} / {} changemaker vectors recovered ({} ms)",
        all.len(),
        all.len(),
        start.elapsed().as_millis()
    ))
}

fn ascending_tuples(max_entry: i64, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &frontier {
            for e in t.last().copied().unwrap_or(0)..=max_entry {
                let mut u = t.clone();
                u.push(e);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn criterion_8() -> Outcome {
    let tuples = ascending_tuples(4, 6);
    let mut changemakers = 0;
    for t in &tuples {
        let a = is_changemaker(t).unwrap();
        let b = subset_sum_cover(t, 64).unwrap();
        check(a == b, format!("{t:?}: condition {a}, subset sums {b}"))?;
        changemakers += a as usize;
    }
    Ok(format!(
        "{} tuples agree ({changemakers} changemakers)",
        tuples.len()
    ))
}

fn random_graph(rng: &mut ChaCha8Rng) -> Multigraph {
    let n = rng.gen_range(2..=6);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..=10 - (n - 1)) {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u, v));
    }
    Multigraph::new(n, edges).unwrap()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let g = random_graph(&mut rng);
        let lat = laplacian_lattice(&g, rng.gen_range(0..g.vertex_count())).unwrap();
        let cert = find_obtuse_superbase(&lat.gram, &bound(g.max_degree() as i64))
            .map_err(|e| e.to_string())?;
        let SearchCertificate::Found(b) = cert else {
            return Err(format!("no superbase for {g:?}"));
        };
        let h = superbase_graph(&lat.gram, &b).unwrap();
        let back = laplacian_lattice(&h, 0).unwrap();
        check(
            lattice_isomorphic(&back.gram, &lat.gram).unwrap().is_some(),
            format!("{g:?}: reconstruction not isomorphic"),
        )?;
    }
    within(start, GRAPH_LIMIT, "100 graphs")?;
    Ok(format!(
        "100 / 100 graphs reconstructed ({} ms)",
        start.elapsed().as_millis()
    ))
}

fn criterion_10() -> Outcome {
    let unknot = alexander("unknot_alexander.json");
    let mut notes = Vec::new();
    let cases = [
        ("two_bridge_7_2_pd.json", (7, 2), 7),
        ("torus_2_3_pd.json", (3, 1), 3),
        ("torus_2_5_pd.json", (5, 1), 5),
        ("torus_2_7_pd.json", (7, 1), 7),
        ("torus_2_9_pd.json", (9, 1), 9),
    ];
    for (file, (p, q), det) in cases {
        let pd = read_json::<PdFile>(&fixture(file))
            .unwrap()
            .to_pd()
            .unwrap();
        let report = verify_alternating_surgery(&pd, &unknot, Rational::new(p, q).unwrap())
            .map_err(|e| format!("{file}: {e}"))?;
        check(report.passed(), format!("{file}: {:?}", report.verdict))?;
        check(
            report.white_determinant == det,
            format!("{file}: determinant {}", report.white_determinant),
        )?;
        notes.push(format!("{file} {p}/{q} det={det}"));
    }
    Ok(format!("PASS: {}", notes.join(", ")))
}

fn criterion_11() -> Outcome {
    let mut obstructed = 0;
    for sigma in enumerate_changemakers(5, 7) {
        // The obstructions need a stable entry.
        if sigma.entries().iter().all(|&s| s <= 1) {
            continue;
        }
        let SuperbaseVerdict::NoSuperbase(why) = superbase_obstruction(&sigma).unwrap() else {
            continue;
        };
        obstructed += 1;
        let lat = build_integral(&sigma).unwrap();
        let cert = find_obtuse_superbase(&lat.gram, &SearchOptions::default())
            .map_err(|e| format!("{sigma:?}: {e}"))?;
        check(
            !matches!(cert, SearchCertificate::Found(_)),
            format!("{sigma:?} obstructed ({why:?}) yet FOUND"),
        )?;
    }
    Ok(format!(
        "{obstructed} obstructed vectors, none FOUND at the default bound"
    ))
}

fn cli_matches_library() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_changemaker"))
        .args(["bounds", "--alexander"])
        .arg(fixture("pretzel_alexander.json"))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    check(
        out.status.code() == Some(0)
            && stdout.contains("stable=(3,2,2) g=5 N=19 window=[18,20] cap=23"),
        format!("bounds printed `{stdout}`"),
    )?;
    Ok("bounds subcommand agrees".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 pretzel pipeline", criterion_1),
        ("2 superbase verdicts", criterion_2),
        ("3 cable obstructions", criterion_3),
        ("4 nonexistence", criterion_4),
        ("5 (2,3)-cable window", criterion_5),
        ("6 torus N = rs", criterion_6),
        ("7 round trip", criterion_7),
        ("8 Brown equivalence", criterion_8),
        ("9 graph lattices", criterion_9),
        ("10 Goeritz verification", criterion_10),
        ("11 obstruction soundness", criterion_11),
        ("1 (cli)", cli_matches_library),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
