//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ainfext::cutoffs::Cutoffs;
use ainfext::linear::{Field, PrimeField, Rationals};
use ainfext::massey::massey_product;
use ainfext::merkulov::{parse_document, AInftyModel, Engine};
use ainfext::presentation::{AlgebraPresentation, FieldSpec, GradedAlgebra, GradedSplitData};
use ainfext::recovery::{ext_oracle, restrict_m_to_e1, roundtrip_check, relation_dual_map};
use ainfext::verify::{check_unit_lemma, verify_model};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

macro_rules! with_field {
    ($spec:expr, $k:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime(p) => {
                let $k = PrimeField::new(p).unwrap();
                $body
            }
            FieldSpec::Rationals => {
                let $k = Rationals;
                $body
            }
        }
    };
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presentations")
}

fn load(name: &str) -> AlgebraPresentation {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    AlgebraPresentation::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn declared(p: &AlgebraPresentation) -> Cutoffs {
    let d = Cutoffs::default();
    Cutoffs::new(p.cutoffs.hom.unwrap_or(d.hom), p.cutoffs.adams.unwrap_or(d.adams)).unwrap()
}

/// The corpus files plus a fixed-seed sample of random presentations.
fn corpus() -> Vec<(String, AlgebraPresentation, Cutoffs)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".pres"))
        .collect();
    names.sort();
    let mut out: Vec<_> = names
        .into_iter()
        .map(|n| {
            let p = load(&n);
            let c = declared(&p);
            (n, p, c)
        })
        .collect();
    out.extend(random_presentations(6));
    out
}

/// Two degree-1 generators over GF(3) with one or two random homogeneous
/// relations of degree 2 or 3.
fn random_presentations(count: usize) -> Vec<(String, AlgebraPresentation, Cutoffs)> {
    let words = |d: usize| -> Vec<String> {
        let mut ws = vec![String::new()];
        for _ in 0..d {
            ws = ws.iter().flat_map(|w| ["a", "b"].map(|g| if w.is_empty() { g.to_string() } else { format!("{w}*{g}") })).collect();
        }
        ws
    };
    let relation = (2usize..=3).prop_flat_map(move |d| {
        let ws = words(d);
        prop::collection::vec(0i64..3, ws.len()).prop_map(move |cs| {
            let terms: Vec<String> = ws.iter().zip(&cs).filter(|(_, c)| **c != 0).map(|(w, c)| format!("{c}*{w}")).collect();
            terms.join(" + ")
        })
    });
    let strategy = prop::collection::vec(relation, 1..=2);
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]));
    let mut out = Vec::new();
    while out.len() < count {
        let rels = strategy.new_tree(&mut runner).unwrap().current();
        let rels: Vec<&String> = rels.iter().filter(|r| !r.is_empty()).collect();
        if rels.is_empty() {
            continue;
        }
        let mut text = String::from("field = 3\ngen a:1, b:1\n");
        for r in &rels {
            writeln!(text, "rel {r}").unwrap();
        }
        let p = AlgebraPresentation::parse(&text).unwrap();
        out.push((format!("random {}", out.len()), p, Cutoffs::new(4, 5).unwrap()));
    }
    out
}

fn build<K: Field>(k: &K, p: &AlgebraPresentation, cut: Cutoffs) -> Result<(Engine<K>, AInftyModel<K>), String> {
    let e = Engine::build(k, p, cut).map_err(|e| e.to_string())?;
    let m = e.build_model().map_err(|e| e.to_string())?;
    Ok((e, m))
}

fn ext_dims<K: Field>(e: &Engine<K>, cut: Cutoffs) -> Vec<Vec<usize>> {
    (0..=cut.hom).map(|n| (0..=cut.adams).map(|s| e.classes_in(n, s).len()).collect()).collect()
}

fn check_ext<K: Field>(k: &K, e: &Engine<K>, p: &AlgebraPresentation, cut: Cutoffs, expected: impl Fn(usize, usize) -> usize) -> Result<(), String> {
    let oracle = ext_oracle(k, p, cut.hom, cut.adams);
    let dims = ext_dims(e, cut);
    for n in 0..=cut.hom {
        for s in 0..=cut.adams {
            let want = expected(n, s);
            ensure!(dims[n][s] == want, "dim Ext^{n}_-{s} = {} (expected {want})", dims[n][s]);
            ensure!(oracle.dim(n, s) == want, "oracle dim Ext^{n}_-{s} = {} (expected {want})", oracle.dim(n, s));
        }
    }
    Ok(())
}

// 1. B/(f) with f = x2*x1*x1 + x1*x1*x2.
fn example_free_mod_one_relation() -> Outcome {
    for file in ["cubic_gf2.pres", "cubic_rationals.pres"] {
        let p = load(file);
        let cut = declared(&p);
        with_field!(p.field, k => {
            let (e, model) = build(&k, &p, cut)?;
            check_ext(&k, &e, &p, cut, |n, s| match (n, s) {
                (0, 0) => 1,
                (1, 1) => 2,
                (2, 3) => 1,
                _ => 0,
            })
            .map_err(|m| format!("{file}: {m}"))?;
            let f = p.relations[0].map(|c| k.from_i64(*c));
            let gen_of = |c: usize| p.generator_index(model.class_label(c).trim_end_matches('#')).unwrap();
            for n in 2..=cut.adams {
                for s in n..=cut.adams {
                    let map = restrict_m_to_e1(&model, n, s).map_err(|e| e.to_string())?;
                    let tuples = map.source.labels().to_vec();
                    for (col, label) in tuples.iter().enumerate() {
                        let word: Vec<usize> = label.split('⊗').map(|l| gen_of(model.find_class(l).unwrap())).collect();
                        for row in 0..map.target.dim() {
                            let got = map.matrix.get(row, col);
                            let want = if (n, s) == (3, 3) {
                                f.terms().find(|(w, _)| **w == word).map_or_else(|| k.zero(), |(_, c)| c.clone())
                            } else {
                                k.zero()
                            };
                            ensure!(*got == want, "{file}: m_{n}({label}) has coefficient {} (expected {})", k.format(got), k.format(&want));
                        }
                    }
                }
            }
        });
    }
    Ok("Ext and m_3 = f# over GF(2) and Q".into())
}

/// `⟨z, r⟩` for a cocycle representative `z ∈ T²_{-s}` and a bar cycle
/// `r = Σ c · (u ⊗ v)` given by words in the generators.
fn pair_with_cycle<K: Field>(e: &Engine<K>, class: usize, cycle: &[(&[usize], &[usize], i64)]) -> K::Elem {
    let k = e.field();
    let alg = e.split_data().algebra();
    let z = e.representative(class).unwrap();
    let basis = e.cobar().basis(2, z.adams).unwrap();
    let mut acc = k.zero();
    for (u, v, c) in cycle {
        let (du, dv) = (alg.word_degree(u), alg.word_degree(v));
        for (iu, cu) in alg.reduce_word(u) {
            for (iv, cv) in alg.reduce_word(v) {
                let w = basis.index_of(&[du, dv], &[iu, iv]).unwrap();
                let t = k.mul(&k.from_i64(*c), &k.mul(&cu, &cv));
                acc = k.add(&acc, &k.mul(&t, &z.coords[w]));
            }
        }
    }
    acc
}

// 2. k[x2, x3]/(x3^2 - x2^3).
fn example_plane_cusp() -> Outcome {
    let p = load("plane_cusp.pres");
    let cut = Cutoffs::new(4, 15).unwrap();
    let k = Rationals;
    let (e, model) = build(&k, &p, cut)?;
    check_ext(&k, &e, &p, cut, |n, s| match (n, s) {
        (0, 0) => 1,
        (n, s) if n >= 1 && (s == 3 * n - 1 || s == 3 * n) => 1,
        _ => 0,
    })?;
    // s5, s6 are dual to r5 = x2⊗x3 - x3⊗x2 and r6 = x3⊗x3 - x2⊗x2^2.
    let (x2, x3) = (0usize, 1usize);
    let dual = |s: usize, cycle: &[(&[usize], &[usize], i64)]| -> Vec<(usize, _)> {
        let c = e.classes_in(2, s)[0];
        vec![(c, k.inv(&pair_with_cycle(&e, c, cycle)))]
    };
    let s5 = dual(5, &[(&[x2], &[x3], 1), (&[x3], &[x2], -1)]);
    let s6 = dual(6, &[(&[x3], &[x3], 1), (&[x2], &[x2, x2], -1)]);
    let neg = |v: &Vec<(usize, _)>| v.iter().map(|(c, x)| (*c, k.neg(x))).collect::<Vec<_>>();
    let (b2, b3) = (model.find_class("x2").unwrap(), model.find_class("x3").unwrap());
    let expected = [
        (vec![b2, b3], s5.clone()),
        (vec![b3, b2], neg(&s5)),
        (vec![b3, b3], s6.clone()),
        (vec![b2, b2, b2], neg(&s6)),
    ];
    for (t, want) in &expected {
        let got = model.m(t).map_err(|e| e.to_string())?;
        ensure!(got == *want, "m({}) = {} (expected {})", t.iter().map(|&c| model.class_label(c)).collect::<Vec<_>>().join("⊗"), model.format_value(&got), model.format_value(want));
    }
    // Every other m_n on E¹ vanishes.
    let e1: Vec<usize> = model.classes_in(1, 2).into_iter().chain(model.classes_in(1, 3)).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    let mut checked = 0;
    for _ in 0..cut.adams / 2 {
        tuples = tuples.iter().flat_map(|t| e1.iter().map(move |&c| [t.clone(), vec![c]].concat())).collect();
        tuples.retain(|t| t.iter().map(|&c| model.classes[c].adams).sum::<usize>() <= cut.adams);
        for t in tuples.iter().filter(|t| t.len() >= 2 && !expected.iter().any(|(u, _)| u == *t)) {
            let got = model.m(t).map_err(|e| e.to_string())?;
            ensure!(got.is_empty(), "m({t:?}) = {} (expected 0)", model.format_value(&got));
            checked += 1;
        }
    }
    Ok(format!("four products exact, {checked} other E¹ products zero"))
}

// 3. k[x]/(x^p), x in Adams degree 2.
fn example_truncated_polynomial() -> Outcome {
    let mut notes = Vec::new();
    for (file, p) in [("truncated_p3_gf5.pres", 3usize), ("truncated_p5_gf7.pres", 5)] {
        let pres = load(file);
        let k = pres.field.prime_field().unwrap();
        let (e, model) = build(&k, &pres, declared(&pres))?;
        let y1 = model.find_class("x").unwrap();
        for n in 2..p {
            let v = model.m(&vec![y1; n]).map_err(|e| e.to_string())?;
            ensure!(v.is_empty(), "{file}: m_{n}(y1^{n}) = {}", model.format_value(&v));
        }
        let y2 = model.m(&vec![y1; p]).map_err(|e| e.to_string())?;
        let basis = model.classes_in(2, 2 * p);
        ensure!(basis.len() == 1 && y2.len() == 1 && y2[0].0 == basis[0], "{file}: m_{p}(y1^{p}) = {} is not a generator of Ext^2_-{}", model.format_value(&y2), 2 * p);
        let r = massey_product(&e, &vec![y1; p]).map_err(|e| e.to_string())?;
        let sign = k.sign((p as i64 + 1) / 2);
        let want = vec![(y2[0].0, k.mul(&sign, &y2[0].1))];
        ensure!(r.representative == want, "{file}: Massey representative {} (expected {})", model.format_value(&r.representative), model.format_value(&want));
        ensure!(r.agrees, "{file}: comparison with m_{p} failed");
        let b = 1 + (p as i64 - 1 + 1) / 2;
        ensure!(r.b.rem_euclid(2) == b.rem_euclid(2), "{file}: sign exponent {} has the wrong parity", r.b);
        notes.push(format!("p={p}: <y1,...,y1> = {}", model.format_value(&r.representative)));
    }
    Ok(notes.join("; "))
}

// 4. A(1) over GF(2).
fn example_a1() -> Outcome {
    let p = load("a1.pres");
    let cut = Cutoffs::new(4, 6).unwrap();
    let k = PrimeField::new(2).unwrap();
    let (e, model) = build(&k, &p, cut)?;
    let dims = ext_dims(&e, cut);
    let oracle = ext_oracle(&k, &p, cut.hom, cut.adams);
    for (n, want) in [(1, [0, 1, 1, 0, 0, 0, 0]), (2, [0, 0, 1, 0, 1, 0, 0])] {
        ensure!(dims[n] == want, "Ext^{n} dims {:?} (expected {want:?})", dims[n]);
        ensure!(oracle.dims[n] == want, "oracle Ext^{n} dims {:?}", oracle.dims[n]);
    }
    let (h0, h1) = (model.find_class("x1").unwrap(), model.find_class("x2").unwrap());
    let m = |t: &[usize]| model.m(t).map_err(|e| e.to_string());
    let h0sq = m(&[h0, h0])?;
    let h1sq = m(&[h1, h1])?;
    ensure!(!h0sq.is_empty() && !h1sq.is_empty(), "m_2(h0⊗h0) = {}, m_2(h1⊗h1) = {}", model.format_value(&h0sq), model.format_value(&h1sq));
    let triple = m(&[h0, h1, h0])?;
    ensure!(triple == h1sq, "m_3(h0⊗h1⊗h0) = {} (expected h1^2 = {})", model.format_value(&triple), model.format_value(&h1sq));
    let r = massey_product(&e, &[h0, h1, h0]).map_err(|e| e.to_string())?;
    ensure!(r.representative == h1sq && r.agrees, "<h0,h1,h0> = {}", model.format_value(&r.representative));
    Ok(format!("m_3(h0⊗h1⊗h0) = <h0,h1,h0> = h1^2 = {}", model.format_value(&h1sq)))
}

// 5. SI, MI and strict unitality over the corpus.
fn identity_suites() -> Outcome {
    let corpus = corpus();
    let mut tuples = 0;
    let mut failures = Vec::new();
    for (name, p, cut) in &corpus {
        with_field!(p.field, k => {
            let (e, model) = build(&k, p, *cut)?;
            let mut reports = verify_model(&model, e.cobar(), 4).map_err(|e| format!("{name}: {e}"))?;
            reports.push(check_unit_lemma(&e, 4).map_err(|e| format!("{name}: {e}"))?);
            for r in reports {
                tuples += r.tuples_tested;
                if !r.passed() {
                    failures.push(format!("{name}: {r}"));
                }
            }
        });
    }
    ensure!(failures.is_empty(), "{}", failures.join("\n  "));
    Ok(format!("{} presentations, {tuples} tuples, 0 violations", corpus.len()))
}

// 6. m_n on (E¹)^{⊗n} against the dual of the iterated section.
fn e1_restriction_equality() -> Outcome {
    let corpus = corpus();
    let mut blocks = 0;
    for (name, p, cut) in &corpus {
        with_field!(p.field, k => {
            let (_, model) = build(&k, p, *cut)?;
            let degrees: Vec<usize> = (0..p.relations.len()).map(|r| p.relation_degree(r)).collect();
            let data = GradedSplitData::new(GradedAlgebra::from_presentation(&k, p, cut.adams), &degrees);
            for s in 2..=cut.adams {
                for n in 2..=s {
                    let lhs = restrict_m_to_e1(&model, n, s).map_err(|e| format!("{name}: {e}"))?;
                    let rhs = relation_dual_map(&data, &model, n, s).map_err(|e| format!("{name}: {e}"))?;
                    ensure!(lhs.matrix == rhs.matrix, "{name}: mismatch at n = {n}, s = {s}");
                    blocks += 1;
                }
            }
        });
    }
    Ok(format!("{blocks} (n, s) blocks equal"))
}

// 7. Cobar cohomology against the minimal resolution.
fn oracle_equivalence() -> Outcome {
    let corpus = corpus();
    let mut cells = 0;
    for (name, p, cut) in &corpus {
        with_field!(p.field, k => {
            let alg = GradedAlgebra::from_presentation(&k, p, cut.adams);
            let cobar = ainfext::cobar::CobarComplex::new(&alg, *cut).map_err(|e| e.to_string())?;
            let oracle = ext_oracle(&k, p, cut.hom, cut.adams);
            for n in 0..=cut.hom {
                for s in 0..=cut.adams {
                    let d = cobar.cohomology_dim(n, s).map_err(|e| format!("{name}: {e}"))?;
                    ensure!(d == oracle.dim(n, s), "{name}: Ext^{n}_-{s} is {d} by cobar, {} by resolution", oracle.dim(n, s));
                    cells += 1;
                }
            }
        });
    }
    Ok(format!("{cells} bidegrees agree"))
}

// 8. Presentations recovered from the models.
fn round_trip() -> Outcome {
    let corpus = corpus();
    for (name, p, cut) in &corpus {
        let report = with_field!(p.field, k => roundtrip_check(&k, p, *cut)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(report.passed(), "{name}: {report:?}");
    }
    Ok(format!("{} presentations", corpus.len()))
}

// 9. Byte-identical exports and exact load/save.
fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ainfext-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let corpus = corpus();
    for (name, p, cut) in &corpus {
        with_field!(p.field, k => {
            let (_, first) = build(&k, p, *cut)?;
            let (_, second) = build(&k, p, *cut)?;
            let json = first.to_json();
            ensure!(json == second.to_json(), "{name}: two builds differ");
            let path = dir.join("model.json");
            std::fs::write(&path, &json).map_err(|e| e.to_string())?;
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let doc = parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
            let loaded = AInftyModel::from_document(&k, &doc).map_err(|e| format!("{name}: {e}"))?;
            ensure!(loaded == first, "{name}: loaded model differs");
            ensure!(loaded.to_json() == json, "{name}: re-export differs");
        });
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} presentations", corpus.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("1 free algebra mod one relation", example_free_mod_one_relation, Some(Duration::from_secs(1))),
        ("2 k[x2,x3]/(x3^2 - x2^3)", example_plane_cusp, Some(Duration::from_secs(10))),
        ("3 k[x]/(x^p) Massey products", example_truncated_polynomial, Some(Duration::from_secs(10))),
        ("4 A(1)", example_a1, Some(Duration::from_secs(5))),
        ("5 identity suites", identity_suites, Some(Duration::from_secs(60))),
        ("6 E1 restriction matrices", e1_restriction_equality, Some(Duration::from_secs(30))),
        ("7 oracle equivalence", oracle_equivalence, Some(Duration::from_secs(60))),
        ("8 round trip", round_trip, Some(Duration::from_secs(60))),
        ("9 determinism", determinism, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(note) => println!("PASS  {name:<34} {:>9.2?}  {note}", elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<34} {:>9.2?}  {why}", elapsed);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
