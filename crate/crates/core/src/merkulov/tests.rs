use super::*;
use crate::linear::{PrimeField, Rationals};
use crate::presentation::parse_presentation;

fn engine<K: Field>(k: &K, text: &str, cut: Cutoffs) -> Engine<K> {
    Engine::build(k, &parse_presentation(text).unwrap(), cut).unwrap()
}

const CUSP: &str = "field = 0; gen x2:2, x3:3; rel x2*x3 - x3*x2; rel x3^2 - x2^3";
const A1: &str = "field = 2; gen h0:1, h1:2; rel h0^2; rel h1^2 + h0*h1*h0; rel h0*h1*h0*h1 + h1*h0*h1*h0";

/// `(-1)^{n(n+1)/2 + 1}`.
fn sigma(n: usize) -> i64 {
    (n * (n + 1) / 2 + 1) as i64
}

#[test]
fn labels_and_unit() {
    let e = engine(&Rationals, CUSP, Cutoffs::new(3, 9).unwrap());
    let labels: Vec<&str> = e.classes().iter().map(|c| c.label.as_str()).collect();
    assert_eq!(&labels[..3], &["1", "x2#", "x3#"]);
    assert!(labels.contains(&"e2_5_0") && labels.contains(&"e2_6_0"));
    assert_eq!(e.find_class("x3").unwrap(), 2);
    assert!(matches!(e.find_class("nope"), Err(Error::UnknownClass(_))));
}

#[test]
fn lambda_two_is_concatenation() {
    let e = engine(&Rationals, "field = 0; gen y:1; rel y^3", Cutoffs::new(3, 6).unwrap());
    let l = e.lambda(&[1, 1]).unwrap().unwrap();
    assert_eq!(e.cobar().format(&l), "[y#|y#]");
}

#[test]
fn triple_product_in_truncated_polynomial_ring() {
    let k = PrimeField::new(5).unwrap();
    let e = engine(&k, "field = 5; gen x:2; rel x^3", Cutoffs::new(3, 6).unwrap());
    let y = e.find_class("x").unwrap();
    let l = e.lambda(&[y, y, y]).unwrap().unwrap();
    assert_eq!((l.hom, l.adams), (2, 6));
    assert!(e.cobar().differential(&l).unwrap().is_zero(&k));
    let m = e.m_value(&[y, y, y]).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(e.classes()[m[0].0].label, "e2_6_0");
}

/// λ_n on `(E¹)^{⊗n}` lands in `T²`, `Gλ_n` lands in `D#`, and
/// `-Gλ_n = σ_n (θ⁺)#` on words of length `n`.
fn check_low_degree_lambda<K: Field>(e: &Engine<K>) {
    let k = e.field();
    let data = e.split_data();
    let cut = e.cutoffs();
    let e1: Vec<(usize, usize, usize)> = (1..e.classes().len())
        .filter(|&c| e.classes()[c].hom == 1)
        .map(|c| (c, 1, e.classes()[c].adams))
        .collect();
    let letter = |c: usize| (e.classes()[c].adams, e.classes()[c].local);
    for tuple in enumerate_tuples(&e1, cut.adams, 0, 2) {
        let n = tuple.len();
        let l = e.lambda(&tuple).unwrap().unwrap();
        assert_eq!(l.hom, 2);
        let g = e.g_lambda(&tuple).unwrap().unwrap();
        let s = g.adams;
        assert_eq!(g.hom, 1);
        for &q in data.q_indices(s) {
            assert!(k.is_zero(&g.coords[q]), "Gλ leaves D# for {tuple:?}");
        }
        let word: Vec<(usize, usize)> = tuple.iter().map(|&c| letter(c)).collect();
        for a in 0..e.split_data().algebra().dim(s) {
            let theta = data.theta(s, a).get(&word).cloned().unwrap_or_else(|| k.zero());
            let expected = k.mul(&k.sign(sigma(n)), &theta);
            assert_eq!(k.neg(&g.coords[a]), expected, "θ mismatch for {tuple:?}, word {a}");
        }
    }
}

#[test]
fn low_degree_lambda_matches_iterated_sections() {
    check_low_degree_lambda(&engine(&Rationals, CUSP, Cutoffs::new(2, 12).unwrap()));
    check_low_degree_lambda(&engine(&PrimeField::new(2).unwrap(), A1, Cutoffs::new(2, 8).unwrap()));
    check_low_degree_lambda(&engine(
        &Rationals,
        "field = 0; gen x1:1, x2:1; rel x2*x1*x1 + x1*x1*x2",
        Cutoffs::new(2, 5).unwrap(),
    ));
    check_low_degree_lambda(&engine(&PrimeField::new(7).unwrap(), "field = 7; gen x:2; rel x^5", Cutoffs::new(2, 10).unwrap()));
}

#[test]
fn products_with_the_unit() {
    let e = engine(&Rationals, CUSP, Cutoffs::new(3, 9).unwrap());
    let k = Rationals;
    for x in 1..e.classes().len() {
        if !e.in_table_domain(&[x, x]) && e.classes()[x].hom > 1 {
            continue;
        }
        assert_eq!(e.m_value(&[0, x]).unwrap(), vec![(x, k.one())]);
        assert_eq!(e.m_value(&[x, 0]).unwrap(), vec![(x, k.one())]);
        if let Some(f) = e.f_value(&[0, x]).unwrap() {
            assert!(f.is_zero(&k));
        }
    }
    assert_eq!(e.m_value(&[0, 0]).unwrap(), vec![(0, k.one())]);
    let b2 = e.find_class("x2").unwrap();
    assert!(e.m_value(&[b2, 0, b2]).unwrap().is_empty());
}

#[test]
fn model_tables_and_json() {
    let e = engine(&Rationals, CUSP, Cutoffs::new(3, 9).unwrap());
    let model = e.build_model().unwrap();
    let (b2, b3) = (model.find_class("x2").unwrap(), model.find_class("x3").unwrap());
    let s5 = model.find_class("e2_5_0").unwrap();
    let v = model.m(&[b2, b3]).unwrap();
    let w = model.m(&[b3, b2]).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].0, s5);
    assert_eq!(w[0].1, Rationals.neg(&v[0].1));
    // Every entry has the right bidegree.
    for (t, out) in &model.m {
        let (h, s) = model.m_bidegree(t);
        for (c, _) in out {
            assert_eq!((model.classes[*c].hom as i64, model.classes[*c].adams), (h, s));
        }
    }
    let json = model.to_json();
    assert_eq!(json, e.build_model().unwrap().to_json());
    let doc = parse_document(&json).unwrap();
    let back = AInftyModel::from_document(&Rationals, &doc).unwrap();
    assert_eq!(back, model);
    assert_eq!(back.to_json(), json);
    assert!(matches!(parse_document(&json[..json.len() / 2]), Err(Error::CorruptModel(_))));
    let bumped = json.replacen("\"schema_version\": 1", "\"schema_version\": 7", 1);
    assert!(matches!(parse_document(&bumped), Err(Error::SchemaVersion { found: 7, .. })));
    assert!(matches!(model.m(&[b3, b3, b3, b3]), Err(Error::Truncation { .. })));
}
