#![allow(dead_code)]

use delpezzo::ade_lattice::DynkinType;
use delpezzo::divisor_algebra::{DivisorClass, Generator, GramTable, Relation};
use delpezzo::linear_systems::{conditions, dim_complete};
use delpezzo::rational::{int, to_i64};
use delpezzo::tiger_engine::decompose::enumerate_splits;
use delpezzo::tiger_engine::{case_table, enumerate_decompositions, CaseId};

pub struct Check {
    pub label: String,
    pub actual: i64,
    pub expected: i64,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.actual == self.expected
    }
}

/// Numbers of `F` for one case at one degree.
pub struct Residual {
    pub gram: GramTable,
    pub f: Generator,
    pub dim: i64,
}

impl Residual {
    pub fn pairing(&self, g: Generator) -> i64 {
        to_i64(&self.gram.pairing(self.f, g).unwrap()).unwrap()
    }
    pub fn k(&self) -> i64 {
        self.pairing(Generator::Canonical)
    }
    pub fn square(&self) -> i64 {
        self.pairing(self.f)
    }
}

pub fn residual(case: CaseId, d: u32) -> Residual {
    let t = case_table(case).unwrap();
    let points: Vec<DynkinType> = t.point_type.into_iter().collect();
    let mut gram = GramTable::new(d, &points, t.uses_minus_one_curve());
    let point = t.point_type.map(|_| 0);
    let f = gram.define_residual(&Relation::new(t.multiple, t.configuration(point), "F")).unwrap();
    let dim = dim_complete(&gram, &DivisorClass::generator(f)).unwrap().dim;
    Residual { gram, f, dim }
}

fn node(n: usize) -> Generator {
    Generator::node(0, n)
}

fn p(t: &str) -> CaseId {
    CaseId::Point(t.parse().unwrap())
}

/// Every reference intersection number and dimension of the residual
/// classes, at every degree where the construction is used.
pub fn residual_fixtures() -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |label: String, actual: i64, expected: i64| out.push(Check { label, actual, expected });

    for d in [4u32, 6] {
        let r = residual(CaseId::MinusOneCurve, d);
        let di = d as i64;
        push(format!("E-curve d={d} F.E"), r.pairing(Generator::MinusOneCurve), 5);
        push(format!("E-curve d={d} F.K"), r.k(), -(3 * di - 2));
        push(format!("E-curve d={d} F^2"), r.square(), 9 * di - 16);
        push(format!("E-curve d={d} dim"), r.dim, 6 * di - 9);
    }

    let r = residual(p("A1"), 3);
    push("A1 d=3 F.D1".into(), r.pairing(node(1)), 6);
    push("A1 d=3 F.K".into(), r.k(), -12);
    push("A1 d=3 F^2".into(), r.square(), 30);
    push("A1 d=3 dim".into(), r.dim, 21);
    let a1 = case_table(p("A1")).unwrap();
    let parts = enumerate_decompositions(&a1, 3).unwrap();
    for (i, want) in [(1, 1), (2, -5), (3, -15)] {
        push(format!("A1 d=3 case {} F1^2", i + 1), parts[i].parts[0].self_intersection, want);
    }

    for d in [2u32, 3] {
        let di = d as i64;
        let r = residual(p("A2"), d);
        push(format!("A2 d={d} F.D1"), r.pairing(node(1)), 2);
        push(format!("A2 d={d} F.D2"), r.pairing(node(2)), 2);
        push(format!("A2 d={d} F.K"), r.k(), -2 * di);
        push(format!("A2 d={d} F^2"), r.square(), 4 * di - 8);
        push(format!("A2 d={d} dim"), r.dim, 3 * di - 4);
        push(format!("A2 d={d} dim Omega"), r.dim - conditions(1), 3 * di - 5);
        let mut g = GramTable::new(d, &[DynkinType::a(2)], false);
        let c = &DivisorClass::generator(node(1)) + &DivisorClass::generator(node(2));
        let ft = g.define_residual(&Relation::new(1, c, "F~")).unwrap();
        let pair = |h| to_i64(&g.pairing(ft, h).unwrap()).unwrap();
        let dim_t = dim_complete(&g, &DivisorClass::generator(ft)).unwrap().dim;
        push(format!("A2 d={d} F~.D1"), pair(node(1)), 1);
        push(format!("A2 d={d} F~.K"), pair(Generator::Canonical), -di);
        push(format!("A2 d={d} F~^2"), pair(ft), di - 2);
        push(format!("A2 d={d} dim F~"), dim_t, di - 1);
        push(format!("A2 d={d} dim Omega~"), dim_t - 1, di - 2);

        let r = residual(p("A3"), d);
        push(format!("A3 d={d} F^2"), r.square(), 4 * di - 6);
        push(format!("A3 d={d} dim"), r.dim, 3 * di - 3);
    }

    for d in 2u32..=5 {
        let r = residual(p("D4"), d);
        push(format!("D4 d={d} F.D1"), r.pairing(node(1)), 1);
        push(format!("D4 d={d} F.D2"), r.pairing(node(2)), 2);
        push(format!("D4 d={d} F^2"), r.square(), 9 * d as i64 - 10);
    }

    let chain: [(&str, i64, i64, i64, i64); 5] =
        [("A4", 4, -4, 3, -2), ("A5", 9, -8, 6, -4), ("A6", 9, -6, 6, -3), ("A7", 16, -10, 10, -5), ("A8", 16, -8, 10, -4)];
    for (t, a, b, c, e) in chain {
        for &d in &case_table(p(t)).unwrap().degrees {
            let r = residual(p(t), d);
            let di = d as i64;
            push(format!("{t} d={d} F^2"), r.square(), a * di + b);
            push(format!("{t} d={d} dim"), r.dim, c * di + e);
        }
    }

    let dtype: [(&str, i64, i64); 4] = [("D5", 4, -4), ("D6", 4, -4), ("D7", 9, -8), ("D8", 9, -6)];
    for (t, a, b) in dtype {
        for &d in &case_table(p(t)).unwrap().degrees {
            push(format!("{t} d={d} F^2"), residual(p(t), d).square(), a * d as i64 + b);
        }
    }

    for t in ["E6", "E7", "E8"] {
        for &d in &case_table(p(t)).unwrap().degrees {
            let r = residual(p(t), d);
            push(format!("{t} d={d} F^2"), r.square(), 4 * d as i64 - 2);
            push(format!("{t} d={d} dim"), r.dim, 3 * d as i64 - 1);
        }
    }
    out
}

/// Split counts computed without the engine: the product of
/// `(coefficient + 1)`, halved (rounding up) when both parts lie in `|-K|`.
pub fn expected_split_count(case: CaseId) -> usize {
    let t = case_table(case).unwrap();
    let mut coefficients = t.coefficients.clone();
    coefficients.push(t.minus_one_coefficient);
    let total: usize = coefficients.iter().map(|&c| c as usize + 1).product();
    if t.multiple == 2 {
        let symmetric = usize::from(coefficients.iter().all(|c| c % 2 == 0));
        (total + symmetric) / 2
    } else {
        total
    }
}

pub fn split_count(case: CaseId) -> usize {
    enumerate_splits(&case_table(case).unwrap()).len()
}

pub fn minus_k(m: i64) -> DivisorClass {
    DivisorClass::anticanonical().scaled(&int(m))
}
