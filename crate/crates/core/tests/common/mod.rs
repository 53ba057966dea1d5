#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use e7forge::arith::Rational;
use e7forge::fano::FanoLabeling;
use e7forge::manivel::{assemble, E7Assembly, SolveOptions};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn labeling(name: &str) -> FanoLabeling {
    FanoLabeling::from_json(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn split() -> &'static E7Assembly<Rational> {
    static A: OnceLock<E7Assembly<Rational>> = OnceLock::new();
    A.get_or_init(|| assemble(&labeling("split.json"), &(), &SolveOptions::standard(1)).unwrap())
}

pub fn hamilton() -> &'static E7Assembly<Rational> {
    static A: OnceLock<E7Assembly<Rational>> = OnceLock::new();
    A.get_or_init(|| assemble(&labeling("hamilton.json"), &(), &SolveOptions::standard(1)).unwrap())
}

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}
