//! One PASS/FAIL line per acceptance criterion, written past the test harness
//! capture so they show up in plain `cargo test` output.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use parastat::fock::parse_word;
use parastat::gz::{self, Pattern, Row};
use parastat::oracle::Oracle;
use parastat::stability::InfiniteFock;
use parastat::verify::{self, Report};
use parastat::{FockSpace, Radical, State};
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn report(r: Report) -> Outcome {
    if r.passed() {
        Ok(format!("{} checks", r.checked))
    } else {
        Err(format!(
            "{}: {} of {} failed, e.g. {:?}",
            r.suite,
            r.failed,
            r.checked,
            r.failures.first()
        ))
    }
}

fn all(parts: Vec<parastat::Result<Report>>) -> Outcome {
    let mut checked = 0;
    for part in parts {
        let r = part.map_err(|e| e.to_string())?;
        checked += r.checked;
        report(r)?;
    }
    Ok(format!("{checked} checks"))
}

fn row(neg: &[u32], pos: &[u32]) -> Row {
    serde_json::from_value(json!({ "neg": neg, "pos": pos })).unwrap()
}

/// Builds an n=3 pattern from its rows listed top (row 6) to bottom (row 1).
fn pattern3(top_down: [(&[u32], &[u32]); 6]) -> Pattern {
    let rows: Vec<Row> = top_down.iter().rev().map(|(n, p)| row(n, p)).collect();
    serde_json::from_value(json!({ "n": 3, "rows": rows })).unwrap()
}

fn sqrt_int(sign: i32, v: i64) -> Radical {
    Radical::from_sqrt_rational(sign, &BigRational::from_integer(BigInt::from(v))).unwrap()
}

fn golden_single() -> Outcome {
    let expected = pattern3([
        (&[1, 0, 0], &[0, 0, 0]),
        (&[1, 0, 0], &[0, 0]),
        (&[1, 0], &[0, 0]),
        (&[1, 0], &[0]),
        (&[0], &[0]),
        (&[0], &[]),
    ]);
    for p in 1..=6u32 {
        let space = FockSpace::new(3, p);
        let out = space
            .apply_word(&parse_word("c+(-2)").unwrap(), &space.vacuum())
            .map_err(|e| e.to_string())?;
        let want = State::basis(expected.clone()).scaled(&sqrt_int(1, p as i64));
        if out != want {
            return Err(format!(
                "p={p}: got {}",
                serde_json::to_string(&out).unwrap()
            ));
        }
    }
    Ok("p = 1..6".into())
}

fn golden_pair() -> Outcome {
    let wide = pattern3([
        (&[2, 0, 0], &[0, 0, 0]),
        (&[2, 0, 0], &[0, 0]),
        (&[1, 0], &[0, 0]),
        (&[1, 0], &[0]),
        (&[0], &[0]),
        (&[0], &[]),
    ]);
    let tall = pattern3([
        (&[1, 1, 0], &[0, 0, 0]),
        (&[1, 1, 0], &[0, 0]),
        (&[1, 0], &[0, 0]),
        (&[1, 0], &[0]),
        (&[0], &[0]),
        (&[0], &[]),
    ]);
    let word = parse_word("c+(-3),c+(-2)").unwrap();
    for p in 1..=5u32 {
        let space = FockSpace::new(3, p);
        let out = space
            .apply_word(&word, &space.vacuum())
            .map_err(|e| e.to_string())?;
        let mut keys: Vec<&Pattern> = out.keys().collect();
        keys.sort();
        let mut want = vec![&tall];
        if p >= 2 {
            want.push(&wide);
        }
        want.sort();
        if keys != want {
            return Err(format!(
                "p={p}: support {}",
                serde_json::to_string(&keys).unwrap()
            ));
        }
        // ⟨0|c₋₂⁻c₋₃⁻c₋₃⁺c₋₂⁺|0⟩ = p² for two distinct parabosonic modes
        let squares = out.norm_squared();
        let p2 = Radical::from_integer((p * p) as i64);
        let oracle = Radical::from_rational(Oracle::new(p).overlap(&word, &word));
        if squares != p2 || oracle != p2 {
            return Err(format!(
                "p={p}: squared sum {squares}, oracle {oracle}, expected {p2}"
            ));
        }
    }
    Ok("p = 1..5".into())
}

fn triples() -> Outcome {
    all((1..=3).map(|p| verify::triples(2, p, 3)).collect())
}

fn cgc_unitarity() -> Outcome {
    all((1..=3).map(|n| verify::cgc_unitarity(n, 4)).collect())
}

fn cartan() -> Outcome {
    let mut runs = Vec::new();
    for n in 1..=2 {
        for p in 1..=3 {
            runs.push(verify::cartan(n, p, 4));
        }
    }
    all(runs)
}

fn hermiticity() -> Outcome {
    let mut runs = Vec::new();
    for n in 1..=3 {
        for p in 1..=3 {
            runs.push(verify::hermiticity(n, p, 4));
        }
    }
    all(runs)
}

fn oracle() -> Outcome {
    all((1..=2).map(|p| verify::oracle(2, p, 3)).collect())
}

/// Semistandard (n|n) supertableaux of shape λ: n even letters then n odd
/// letters; even letters strictly increase down columns, odd letters strictly
/// increase along rows.
fn supertableaux(lambda: &[u32], n: usize) -> u64 {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut fill = vec![vec![0usize; lambda.first().copied().unwrap_or(0) as usize]; lambda.len()];
    fn go(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        let Some(&(r, c)) = cells.get(k) else {
            return 1;
        };
        let mut total = 0;
        for x in 0..2 * n {
            let odd = x >= n;
            if c > 0 {
                let left = fill[r][c - 1];
                if x < left || (odd && x == left) {
                    continue;
                }
            }
            if r > 0 {
                let up = fill[r - 1][c];
                if x < up || (!odd && x == up) {
                    continue;
                }
            }
            fill[r][c] = x;
            total += go(k + 1, cells, fill, n);
        }
        total
    }
    go(0, &cells, &mut fill, n)
}

fn partitions(d: u32, max: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=d.min(max)).rev() {
        for mut rest in partitions(d - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn dimensions() -> Outcome {
    let mut checked = 0;
    for n in 1..=3usize {
        for d in 0..=4 {
            for lambda in partitions(d, d) {
                let expected = supertableaux(&lambda, n);
                let top = gz::top_from_partition(&lambda, n);
                match top {
                    Ok(top) => {
                        let count = gz::enumerate_patterns(&top, n)
                            .map_err(|e| e.to_string())?
                            .len() as u64;
                        if count != expected {
                            return Err(format!(
                                "n={n} λ={lambda:?}: {count} patterns, {expected} tableaux"
                            ));
                        }
                    }
                    Err(_) if expected == 0 => {}
                    Err(e) => {
                        return Err(format!("n={n} λ={lambda:?}: {e}, but {expected} tableaux"))
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} shapes"))
}

fn stability() -> Outcome {
    all((1..=3).map(|p| verify::stability(3, p, 2, 3)).collect())
}

fn infinite() -> Outcome {
    let r = all((1..=2).map(|p| verify::infinite(p, 3, 3, 3, 3)).collect())?;
    // c₋₂⁺ on the infinite vacuum is √p times the ν = (1) pattern.
    let f = InfiniteFock::new(2);
    let out = f
        .apply_word(&parse_word("c+(-2)").unwrap(), &f.vacuum())
        .map_err(|e| e.to_string())?;
    let coefs: Vec<&Radical> = out.iter().map(|(_, c)| c).collect();
    if coefs != vec![&sqrt_int(1, 2)] {
        return Err(format!(
            "c+(-2) on the infinite vacuum: {}",
            serde_json::to_string(&out).unwrap()
        ));
    }
    Ok(r)
}

fn matrix() -> Outcome {
    report(verify::matrix(2, 5).map_err(|e| e.to_string())?)
}

fn line(text: String) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").unwrap();
    out.flush().unwrap();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (
            "golden single creation on the n=3 vacuum",
            golden_single,
            Duration::from_secs(1),
        ),
        (
            "golden two-creation state and its norm",
            golden_pair,
            Duration::from_secs(5),
        ),
        (
            "triple relations, n=2, p ≤ 3, degree ≤ 3",
            triples,
            Duration::from_secs(600),
        ),
        (
            "coupling-coefficient orthonormality, n ≤ 3, |λ| ≤ 4",
            cgc_unitarity,
            Duration::from_secs(300),
        ),
        (
            "Cartan diagonal, n ≤ 2, p ≤ 3, degree ≤ 4",
            cartan,
            Duration::MAX,
        ),
        (
            "c⁻ is the transpose of c⁺, degree ≤ 4",
            hermiticity,
            Duration::MAX,
        ),
        (
            "engine inner products equal oracle values, n=2, p ≤ 2, length ≤ 3",
            oracle,
            Duration::MAX,
        ),
        (
            "pattern counts equal supertableaux counts, n ≤ 3, |λ| ≤ 4",
            dimensions,
            Duration::MAX,
        ),
        (
            "stability propositions, n=3, length ≤ 2, embedding on |λ| ≤ 3",
            stability,
            Duration::MAX,
        ),
        (
            "infinite rank: truncations agree, triples vanish, length ≤ 3, |i| ≤ 3",
            infinite,
            Duration::MAX,
        ),
        (
            "matrix relations, n ≤ 2 and infinite |i| ≤ 5",
            matrix,
            Duration::MAX,
        ),
    ];
    let mut failed = Vec::new();
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > *budget => Err(format!("over budget: {took:.1?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => line(format!("PASS {:>2} {name} ({detail}, {took:.1?})", k + 1)),
            Err(why) => {
                line(format!("FAIL {:>2} {name}: {why}", k + 1));
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
