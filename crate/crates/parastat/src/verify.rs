//! Verification suites for the identities the representation must satisfy.

use std::collections::BTreeSet;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cgc;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, Letter, Sign, State};
use crate::gz::{self, rho, Pattern};
use crate::linalg;
use crate::matrix::{self, RankBound};
use crate::oracle::{creation_words, Oracle};
use crate::radical::Radical;
use crate::stability::{self, InfiniteFock, InfiniteState};

const MAX_RECORDED: usize = 25;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few counterexamples.
    pub failures: Vec<String>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(what());
            }
        }
    }

    fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(f);
            }
        }
    }
}

fn indices(n: usize) -> Vec<i32> {
    (-(n as i32)..=n as i32).filter(|&i| i != 0).collect()
}

fn rat(v: i64) -> Radical {
    Radical::from_integer(v)
}

fn describe(m: &Pattern) -> String {
    serde_json::to_string(m).unwrap_or_default()
}

/// Triple relations on every basis vector of degree at most `degree`.
pub fn triples(n: usize, p: u32, degree: u32) -> Result<Report> {
    let space = FockSpace::new(n, p);
    let basis = gz::basis(n, p, degree);
    let idx = indices(n);
    let parts: Vec<Report> = basis
        .par_iter()
        .map(|m| {
            let mut rep = Report::new("triples");
            let s = State::basis(m.clone());
            for xi in Sign::both() {
                for eta in Sign::both() {
                    for eps in Sign::both() {
                        for &j in &idx {
                            for &k in &idx {
                                for &l in &idx {
                                    let r = space.triple_residual(xi, eta, eps, j, k, l, &s)?;
                                    rep.check(r.is_zero(), || {
                                        format!(
                                            "signs ({},{},{}) indices ({j},{k},{l}) on {}",
                                            xi.value(),
                                            eta.value(),
                                            eps.value(),
                                            describe(m)
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new("triples");
    parts.into_iter().for_each(|r| rep.merge(r));
    Ok(rep)
}

/// Orthonormality of the coupling matrices for all top rows with `|λ| ≤ degree`.
pub fn cgc_unitarity(n: usize, degree: u32) -> Result<Report> {
    let mut rep = Report::new("cgc-unitarity");
    let tops = gz::enumerate_top_rows(n, degree.max(1), degree);
    let results: Vec<(gz::Row, cgc::UnitarityReport)> = tops
        .par_iter()
        .map(|t| Ok((t.clone(), cgc::unitarity(t, n)?)))
        .collect::<Result<_>>()?;
    for (top, r) in results {
        rep.check(r.failures.is_empty(), || {
            format!("top {:?}: {}", top, r.failures.join("; "))
        });
    }
    Ok(rep)
}

/// `⟦c_i^+, c_i^-⟧ = 2h_i` on basis vectors, and the gl(n|n) tensor relation
/// `⟦E_{ab}, c_c^+⟧ = δ_{bc} c_a^+` on vectors of degree at most `degree − 2`.
pub fn cartan(n: usize, p: u32, degree: u32) -> Result<Report> {
    let space = FockSpace::new(n, p);
    let idx = indices(n);
    let basis = gz::basis(n, p, degree);
    let parts: Vec<Report> = basis
        .par_iter()
        .map(|m| {
            let mut rep = Report::new("cartan");
            let s = State::basis(m.clone());
            for &i in &idx {
                let cm = space.apply(Letter::minus(i), &s)?;
                let cp = space.apply(Letter::plus(i), &s)?;
                let mut lhs = space.apply(Letter::plus(i), &cm)?;
                let sg = if i > 0 { 1 } else { -1 };
                lhs.add_scaled(&space.apply(Letter::minus(i), &cp)?, &rat(sg));
                let e = m.cartan_eigenvalue(i, p)? * BigRational::from_integer(BigInt::from(2));
                let rhs = s.scaled(&Radical::from_rational(e));
                rep.check(lhs == rhs, || format!("h({i}) on {}", describe(m)));
            }
            if m.degree() + 2 <= degree as u64 {
                for &a in &idx {
                    for &b in &idx {
                        let eab_deg = (gz::degree(a) + gz::degree(b)) % 2;
                        for &c in &idx {
                            let x = space.gl_action(a, b, &space.apply(Letter::plus(c), &s)?)?;
                            let y = space.apply(Letter::plus(c), &space.gl_action(a, b, &s)?)?;
                            let sg = if eab_deg * gz::degree(c) == 1 { -1 } else { 1 };
                            let mut lhs = x;
                            lhs.add_scaled(&y, &rat(-sg));
                            let rhs = if b == c {
                                space.apply(Letter::plus(a), &s)?
                            } else {
                                State::zero()
                            };
                            rep.check(lhs == rhs, || {
                                format!("⟦E({a},{b}), c+({c})⟧ on {}", describe(m))
                            });
                        }
                    }
                }
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new("cartan");
    parts.into_iter().for_each(|r| rep.merge(r));
    Ok(rep)
}

/// The matrix of `c_i^-` is the transpose of that of `c_i^+` on the truncation
/// to degree at most `degree`.
pub fn hermiticity(n: usize, p: u32, degree: u32) -> Result<Report> {
    let space = FockSpace::new(n, p);
    let mut rep = Report::new("hermiticity");
    let idx = indices(n);
    let basis = gz::basis(n, p, degree);
    for m in &basis {
        for &i in &idx {
            let up = space.action(Sign::Plus, i, m)?;
            if m.degree() < degree as u64 {
                for (m2, v) in up.iter() {
                    let down = space.action(Sign::Minus, i, m2)?;
                    let back = down.iter().find(|(x, _)| x == m).map(|(_, w)| w.clone());
                    rep.check(back.as_ref() == Some(v), || {
                        format!("⟨{}|c-({i})|{}⟩", describe(m), describe(m2))
                    });
                }
            }
            for (m2, v) in space.action(Sign::Minus, i, m)?.iter() {
                let fwd = space.action(Sign::Plus, i, m2)?;
                let there = fwd.iter().find(|(x, _)| x == m).map(|(_, w)| w.clone());
                rep.check(there.as_ref() == Some(v), || {
                    format!("⟨{}|c+({i})|{}⟩", describe(m), describe(m2))
                });
            }
        }
    }
    Ok(rep)
}

/// Engine inner products of creation-word states against the oracle, plus
/// positive semidefiniteness of the Gram matrix.
pub fn oracle(n: usize, p: u32, max_len: usize) -> Result<Report> {
    let space = FockSpace::new(n, p);
    let oracle = Oracle::new(p);
    let mut rep = Report::new("oracle");
    let words: Vec<Vec<Letter>> = (0..=max_len).flat_map(|l| creation_words(n, l)).collect();
    let states: Vec<State> = words
        .par_iter()
        .map(|w| space.apply_word(w, &space.vacuum()))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<(bool, String)>> = (0..words.len())
        .into_par_iter()
        .map(|a| {
            (0..words.len())
                .map(|b| {
                    let engine = states[a].inner(&states[b]);
                    let exact = Radical::from_rational(oracle.overlap(&words[a], &words[b]));
                    let msg = format!(
                        "⟨{}|{}⟩: engine {} oracle {}",
                        crate::fock::format_word(&words[a]),
                        crate::fock::format_word(&words[b]),
                        engine,
                        exact
                    );
                    (engine == exact, msg)
                })
                .collect()
        })
        .collect();
    for row in rows {
        for (ok, msg) in row {
            rep.check(ok, || msg);
        }
    }
    let gram = oracle.gram_matrix(&words);
    rep.check(linalg::is_psd(&gram), || {
        "oracle Gram matrix is not positive semidefinite".into()
    });
    Ok(rep)
}

/// Pattern counts against supertableaux counts.
pub fn dimensions(n_max: usize, degree: u32) -> Result<Report> {
    let mut rep = Report::new("dimensions");
    for n in 1..=n_max {
        for d in 0..=degree {
            for lambda in gz::partitions(d, d.max(1)) {
                if lambda.get(n).is_some_and(|&x| x as usize > n) {
                    continue;
                }
                let top = gz::top_from_partition(&lambda, n)?;
                let count = gz::enumerate_patterns(&top, n)?.len() as u64;
                let dim = gz::dimension_covariant(&lambda, n)?;
                rep.check(count == dim, || {
                    format!("n={n} λ={lambda:?}: {count} patterns, {dim} tableaux")
                });
            }
        }
    }
    Ok(rep)
}

/// Matrix-level relations for finite `n` and for the infinite algebra.
pub fn matrix(n: usize, infinite_indices: usize) -> Result<Report> {
    let mut rep = Report::new("matrix");
    for k in 1..=n {
        let r = matrix::verify_relations(k, RankBound::Finite(k))?;
        rep.checked += r.checked;
        rep.failed += r.failures.len();
        rep.failures.extend(
            r.failures
                .into_iter()
                .take(MAX_RECORDED)
                .map(|f| format!("n={k}: {f}")),
        );
        rep.check(matrix::gl_span_independent(k)?, || {
            format!("n={k}: gl brackets are dependent")
        });
    }
    if infinite_indices > 0 {
        let r = matrix::verify_relations(infinite_indices, RankBound::Infinite)?;
        rep.checked += r.checked;
        rep.failed += r.failures.len();
        rep.failures.extend(
            r.failures
                .into_iter()
                .take(MAX_RECORDED)
                .map(|f| format!("infinite: {f}")),
        );
    }
    Ok(rep)
}

/// Stability properties at rank `n`.
///
/// * creation words of length below `n` on the vacuum give row-stable patterns;
/// * `c_i^+` on a pattern stable w.r.t. `s < 2n−1` gives patterns stable
///   w.r.t. `max(s+2, ρ(i)+1)`;
/// * `c_i^-` preserves `s`-stability and kills `s`-stable vectors if `ρ(i) > s`;
/// * `c_i^±` commute with the embedding φ into rank `n+1`.
pub fn stability(n: usize, p: u32, max_len: usize, coef_degree: u32) -> Result<Report> {
    let space = FockSpace::new(n, p);
    let mut rep = Report::new("stability");
    let idx = indices(n);
    let mut layer = vec![space.vacuum()];
    let mut seen: BTreeSet<Pattern> = BTreeSet::new();
    seen.insert(Pattern::vacuum(n));
    for len in 1..=max_len {
        let mut next = Vec::new();
        for s in &layer {
            for &i in &idx {
                let out = space.apply(Letter::plus(i), s)?;
                if len < n {
                    for m in out.keys() {
                        rep.check(stability::stability_index(m).is_some(), || {
                            format!(
                                "length-{len} creation output not row-stable: {}",
                                describe(m)
                            )
                        });
                    }
                }
                seen.extend(out.keys().cloned());
                next.push(out);
            }
        }
        layer = next;
    }
    for m in &seen {
        let Some(s) = stability::stability_index(m) else {
            continue;
        };
        for &i in &idx {
            let r = rho(i)?;
            let bound = (s + 2).max(r + 1);
            if s < 2 * n - 1 && bound <= 2 * n {
                for m2 in space.action(Sign::Plus, i, m)?.iter().map(|(x, _)| x) {
                    rep.check(stability::is_stable_wrt(m2, bound), || {
                        format!("c+({i}) on {} not stable w.r.t. {bound}", describe(m))
                    });
                }
            }
            let down = space.action(Sign::Minus, i, m)?;
            for m2 in down.iter().map(|(x, _)| x) {
                rep.check(stability::is_stable_wrt(m2, s), || {
                    format!("c-({i}) on {} loses stability {s}", describe(m))
                });
            }
            if r > s {
                rep.check(down.is_empty(), || {
                    format!("c-({i}) with ρ > {s} does not kill {}", describe(m))
                });
            }
        }
    }
    rep.merge(coefficient_stability(n, p, coef_degree)?);
    Ok(rep)
}

fn embed(s: &State) -> Result<Option<State>> {
    let mut out = State::zero();
    for (m, c) in s.iter() {
        if m.top().pos.iter().any(|&x| x > 0) {
            return Ok(None);
        }
        out.add_term(stability::phi_up(m)?, c);
    }
    Ok(Some(out))
}

/// `c_i^± φ(m) = φ(c_i^± m)` for every pattern of degree at most `degree`
/// that is row-stable with respect to its top row.
pub fn coefficient_stability(n: usize, p: u32, degree: u32) -> Result<Report> {
    let small = FockSpace::new(n, p);
    let big = FockSpace::new(n + 1, p);
    let mut rep = Report::new("stability");
    for m in gz::basis(n, p, degree) {
        if m.top().stable_part().is_none() {
            continue;
        }
        let s = State::basis(m.clone());
        let up = State::basis(stability::phi_up(&m)?);
        for i in indices(n) {
            for sign in Sign::both() {
                let l = Letter { sign, index: i };
                let lo = embed(&small.apply(l, &s)?)?;
                let hi = big.apply(l, &up)?;
                rep.check(lo.as_ref() == Some(&hi), || {
                    format!("{l} does not commute with φ on {}", describe(&m))
                });
            }
        }
    }
    Ok(rep)
}

/// Infinite-rank checks on states built from words of length at most
/// `max_len` with `|i| ≤ max_index` on the infinite vacuum: the action is the
/// same through the `2n` and `2n+2` truncations, the tail weight equals the
/// signed letter count, and triple residuals vanish on states from words of
/// length at most `triple_len` with indices `|i| ≤ triple_index`.
pub fn infinite(
    p: u32,
    max_len: usize,
    max_index: i32,
    triple_len: usize,
    triple_index: i32,
) -> Result<Report> {
    let f = InfiniteFock::new(p);
    let mut rep = Report::new("infinite");
    let letters: Vec<Letter> = (-max_index..=max_index)
        .filter(|&i| i != 0)
        .flat_map(|i| [Letter::plus(i), Letter::minus(i)])
        .collect();
    let mut layer: Vec<(Vec<Letter>, InfiniteState)> = vec![(Vec::new(), f.vacuum())];
    let mut all = layer.clone();
    for _ in 0..max_len {
        let results: Vec<(Vec<Letter>, InfiniteState, bool, bool)> = layer
            .par_iter()
            .flat_map(|(w, s)| letters.par_iter().map(move |&l| (w, s, l)))
            .map(|(w, s, l)| {
                let a = f.apply(l, s)?;
                let b = f.apply_at(l, s, 1)?;
                let mut word = vec![l];
                word.extend_from_slice(w);
                let signed: i64 = word.iter().map(|x| x.sign.value()).sum();
                let weight_ok = a
                    .keys()
                    .all(|ip| ip.tail.iter().map(|&x| x as i64).sum::<i64>() == signed);
                Ok((word, a.clone(), a == b, weight_ok))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (word, a, same, weight_ok) in results {
            rep.check(same, || {
                format!(
                    "truncations disagree on {}",
                    crate::fock::format_word(&word)
                )
            });
            rep.check(weight_ok, || {
                format!(
                    "tail weight mismatch on {}",
                    crate::fock::format_word(&word)
                )
            });
            if !a.is_zero() {
                next.push((word, a));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let targets: Vec<&(Vec<Letter>, InfiniteState)> = all
        .iter()
        .filter(|(w, _)| w.len() <= triple_len && w.iter().all(|l| l.index.abs() <= triple_index))
        .collect();
    let idx: Vec<i32> = (-triple_index..=triple_index).filter(|&i| i != 0).collect();
    let failures = Mutex::new(Report::new("infinite"));
    targets.par_iter().try_for_each(|(w, s)| -> Result<()> {
        let mut local = Report::new("infinite");
        for xi in Sign::both() {
            for eta in Sign::both() {
                for eps in Sign::both() {
                    for &j in &idx {
                        for &k in &idx {
                            for &l in &idx {
                                let r = f.triple_residual(xi, eta, eps, j, k, l, s)?;
                                local.check(r.is_zero(), || {
                                    format!(
                                        "triple ({},{},{}) ({j},{k},{l}) on {}",
                                        xi.value(),
                                        eta.value(),
                                        eps.value(),
                                        crate::fock::format_word(w)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        failures.lock().unwrap().merge(local);
        Ok(())
    })?;
    rep.merge(failures.into_inner().unwrap());
    Ok(rep)
}

pub const SUITES: [&str; 9] = [
    "triples",
    "cgc-unitarity",
    "cartan",
    "hermiticity",
    "stability",
    "oracle",
    "matrix",
    "infinite",
    "dimensions",
];

/// Runs a suite by name with the given scale parameters.
pub fn run(suite: &str, n: usize, p: u32, degree: u32, len: usize) -> Result<Report> {
    match suite {
        "triples" => triples(n, p, degree),
        "cgc-unitarity" => cgc_unitarity(n, degree),
        "cartan" => cartan(n, p, degree),
        "hermiticity" => hermiticity(n, p, degree),
        "stability" => stability(n, p, len, degree),
        "oracle" => oracle(n, p, len),
        "matrix" => matrix(n, 5),
        "infinite" => infinite(p, len, 3, 1, 2),
        "dimensions" => dimensions(n, degree),
        other => Err(Error::Domain(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
