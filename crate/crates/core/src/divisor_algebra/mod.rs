//! Symbolic Q-divisor classes on the minimal resolution.
//!
//! A [`GramTable`] holds the intersection pairing on a finite set of named
//! generators: the canonical class `K`, the (-2)-curves over each singular
//! point, optionally one (-1)-curve `E`, and residual classes `F` defined by
//! relations `m(-K) ~ configuration + F`. Everything else is bilinear
//! expansion over that table.

pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::ade_lattice::{DynkinType, SurfaceSpec};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("no pairing defined between {0} and {1}")]
    UndefinedPairing(Generator, Generator),
    #[error("generator {0} is not part of this table")]
    UnknownGenerator(Generator),
    #[error("relation multiple must be positive")]
    ZeroMultiple,
    #[error("not a generator name: {0}")]
    BadName(String),
}

/// A named generator of the divisor group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Canonical,
    /// Node `node` (1-based) over singular point `point` (0-based index
    /// into the surface's singularity list).
    Exceptional { point: usize, node: usize },
    MinusOneCurve,
    Residual(usize),
}

impl Generator {
    pub fn node(point: usize, node: usize) -> Self {
        Generator::Exceptional { point, node }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Canonical => write!(f, "K"),
            Generator::Exceptional { point, node } => write!(f, "D{node}@{}", point + 1),
            Generator::MinusOneCurve => write!(f, "E"),
            Generator::Residual(i) => write!(f, "F#{i}"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = AlgebraError;

    /// Parses the display form: `K`, `E`, `D{node}@{point}` or `F#{i}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::BadName(s.to_string());
        match s {
            "K" => return Ok(Generator::Canonical),
            "E" => return Ok(Generator::MinusOneCurve),
            _ => {}
        }
        if let Some(i) = s.strip_prefix("F#") {
            return i.parse().map(Generator::Residual).map_err(|_| bad());
        }
        let rest = s.strip_prefix('D').ok_or_else(bad)?;
        let (node, point) = rest.split_once('@').ok_or_else(bad)?;
        let node: usize = node.parse().map_err(|_| bad())?;
        let point: usize = point.parse().map_err(|_| bad())?;
        if node == 0 || point == 0 {
            return Err(bad());
        }
        Ok(Generator::node(point - 1, node))
    }
}

/// A finite rational combination of generators. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorClass {
    terms: BTreeMap<Generator, Rational>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, int(1))
    }

    pub fn canonical() -> Self {
        Self::generator(Generator::Canonical)
    }

    /// `-K`.
    pub fn anticanonical() -> Self {
        Self::term(Generator::Canonical, int(-1))
    }

    pub fn term(g: Generator, coefficient: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(g, coefficient);
        c
    }

    pub fn add_term(&mut self, g: Generator, coefficient: Rational) {
        let slot = self.terms.entry(g).or_insert_with(Rational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coefficient(&self, g: Generator) -> Rational {
        self.terms.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &Rational)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Generator> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, c * factor);
        }
        out
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs == int(1) {
                write!(f, "{g}")?;
            } else {
                write!(f, "{abs}{g}")?;
            }
        }
        Ok(())
    }
}

impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(*g, c.clone());
        }
        out
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scaled(&int(-1))
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

impl Mul<DivisorClass> for Rational {
    type Output = DivisorClass;

    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.scaled(&self)
    }
}

/// `m(-K) ~ configuration + F`, defining the residual class `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub multiple: u32,
    pub configuration: DivisorClass,
    pub residual_name: String,
}

impl Relation {
    pub fn new(multiple: u32, configuration: DivisorClass, residual_name: impl Into<String>) -> Self {
        Relation { multiple, configuration, residual_name: residual_name.into() }
    }

    /// The class `m(-K) - configuration`.
    pub fn residual_expression(&self) -> DivisorClass {
        &DivisorClass::anticanonical().scaled(&int(self.multiple as i64)) - &self.configuration
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "-{}K ~ ", self.multiple)?;
        if !self.configuration.is_zero() {
            write!(f, "{} + ", self.configuration)?;
        }
        write!(f, "{}", self.residual_name)
    }
}

/// A residual class with its pairings against every generator that existed
/// when it was solved, plus its self-intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualClass {
    pub name: String,
    pub relation: Relation,
    pairings: Vec<(Generator, Rational)>,
    self_intersection: Rational,
}

impl ResidualClass {
    pub fn pairing_with(&self, g: Generator) -> Option<&Rational> {
        self.pairings.iter().find(|(h, _)| *h == g).map(|(_, q)| q)
    }

    pub fn pairings(&self) -> &[(Generator, Rational)] {
        &self.pairings
    }

    pub fn self_intersection(&self) -> &Rational {
        &self.self_intersection
    }

    /// `F . K`.
    pub fn canonical_degree(&self) -> &Rational {
        self.pairing_with(Generator::Canonical).expect("K is always a generator")
    }
}

/// Symmetric rational pairing on the generator set.
///
/// Base pairings: `K^2 = d`, `K.D = 0`, `D^2 = -2` with the Dynkin
/// adjacency inside one point and `0` across points, `E^2 = -1`,
/// `K.E = -1`, and `E.D = 0` (the (-1)-curve is taken disjoint from the
/// exceptional locus).
#[derive(Clone, Debug)]
pub struct GramTable {
    degree: u32,
    points: Vec<DynkinType>,
    minus_one_curve: bool,
    residuals: Vec<ResidualClass>,
}

impl GramTable {
    pub fn new(degree: u32, points: &[DynkinType], minus_one_curve: bool) -> Self {
        GramTable { degree, points: points.to_vec(), minus_one_curve, residuals: Vec::new() }
    }

    pub fn for_surface(spec: &SurfaceSpec, minus_one_curve: bool) -> Self {
        Self::new(spec.degree(), spec.singularities(), minus_one_curve)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn points(&self) -> &[DynkinType] {
        &self.points
    }

    pub fn has_minus_one_curve(&self) -> bool {
        self.minus_one_curve
    }

    /// `K`, then every exceptional curve point by point, then `E`.
    pub fn base_generators(&self) -> Vec<Generator> {
        let mut out = vec![Generator::Canonical];
        for (p, t) in self.points.iter().enumerate() {
            out.extend((1..=t.rank() as usize).map(|n| Generator::node(p, n)));
        }
        if self.minus_one_curve {
            out.push(Generator::MinusOneCurve);
        }
        out
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = self.base_generators();
        out.extend((0..self.residuals.len()).map(Generator::Residual));
        out
    }

    pub fn contains(&self, g: Generator) -> bool {
        match g {
            Generator::Canonical => true,
            Generator::Exceptional { point, node } => {
                self.points.get(point).is_some_and(|t| node >= 1 && node <= t.rank() as usize)
            }
            Generator::MinusOneCurve => self.minus_one_curve,
            Generator::Residual(i) => i < self.residuals.len(),
        }
    }

    pub fn residual(&self, g: Generator) -> Option<&ResidualClass> {
        match g {
            Generator::Residual(i) => self.residuals.get(i),
            _ => None,
        }
    }

    pub fn pairing(&self, g: Generator, h: Generator) -> Result<Rational, AlgebraError> {
        for x in [g, h] {
            if !self.contains(x) {
                return Err(AlgebraError::UnknownGenerator(x));
            }
        }
        use Generator::*;
        let q = match (g, h) {
            (Residual(i), Residual(j)) => {
                let (later, earlier) = if i >= j { (i, h) } else { (j, g) };
                let r = &self.residuals[later];
                if i == j {
                    r.self_intersection.clone()
                } else {
                    r.pairing_with(earlier).cloned().ok_or(AlgebraError::UndefinedPairing(g, h))?
                }
            }
            (Residual(i), other) | (other, Residual(i)) => self.residuals[i]
                .pairing_with(other)
                .cloned()
                .ok_or(AlgebraError::UndefinedPairing(g, h))?,
            (Canonical, Canonical) => int(self.degree as i64),
            (Canonical, Exceptional { .. }) | (Exceptional { .. }, Canonical) => int(0),
            (Canonical, MinusOneCurve) | (MinusOneCurve, Canonical) => int(-1),
            (MinusOneCurve, MinusOneCurve) => int(-1),
            (MinusOneCurve, Exceptional { .. }) | (Exceptional { .. }, MinusOneCurve) => int(0),
            (Exceptional { point: p, node: a }, Exceptional { point: q, node: b }) => {
                if p != q {
                    int(0)
                } else if a == b {
                    int(-2)
                } else if self.points[p].adjacent(a, b) {
                    int(1)
                } else {
                    int(0)
                }
            }
        };
        Ok(q)
    }

    /// Bilinear expansion of `a . b` over the table.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, AlgebraError> {
        let mut total = Rational::zero();
        for (g, x) in a.terms() {
            for (h, y) in b.terms() {
                total += x * y * self.pairing(g, h)?;
            }
        }
        Ok(total)
    }

    /// Pairing of a class against a single generator.
    pub fn intersect_generator(&self, a: &DivisorClass, g: Generator) -> Result<Rational, AlgebraError> {
        let mut total = Rational::zero();
        for (h, x) in a.terms() {
            total += x * self.pairing(h, g)?;
        }
        Ok(total)
    }

    /// Solves `F := m(-K) - configuration`: `F . X = m(-K . X) - config . X`
    /// for every generator `X` of the table, and `F^2` by substituting `F`
    /// into itself.
    pub fn solve_residual(&self, relation: &Relation) -> Result<ResidualClass, AlgebraError> {
        if relation.multiple == 0 {
            return Err(AlgebraError::ZeroMultiple);
        }
        for g in relation.configuration.support() {
            if !self.contains(g) {
                return Err(AlgebraError::UnknownGenerator(g));
            }
        }
        let m = int(relation.multiple as i64);
        let mut pairings = Vec::new();
        for g in self.generators() {
            let minus_k = -self.pairing(Generator::Canonical, g)?;
            let config = self.intersect_generator(&relation.configuration, g)?;
            pairings.push((g, &m * minus_k - config));
        }
        let lookup = |g: Generator| pairings.iter().find(|(h, _)| *h == g).map(|(_, q)| q.clone());
        let f_dot_k = lookup(Generator::Canonical).expect("K present");
        let mut config_dot_f = Rational::zero();
        for (g, c) in relation.configuration.terms() {
            config_dot_f += c * lookup(g).expect("configuration generators are in the table");
        }
        let self_intersection = &m * (-f_dot_k) - config_dot_f;
        Ok(ResidualClass {
            name: relation.residual_name.clone(),
            relation: relation.clone(),
            pairings,
            self_intersection,
        })
    }

    /// Registers a solved residual class as a new generator.
    pub fn add_residual(&mut self, residual: ResidualClass) -> Generator {
        self.residuals.push(residual);
        Generator::Residual(self.residuals.len() - 1)
    }

    /// Solves and registers in one step.
    pub fn define_residual(&mut self, relation: &Relation) -> Result<Generator, AlgebraError> {
        let r = self.solve_residual(relation)?;
        Ok(self.add_residual(r))
    }

    /// Pairs `configuration + F - m(-K)` against every generator. The
    /// relation is consistent iff every entry is zero.
    pub fn relation_defects(
        &self,
        relation: &Relation,
        residual: Generator,
    ) -> Result<Vec<(Generator, Rational)>, AlgebraError> {
        let lhs = &relation.configuration + &DivisorClass::generator(residual);
        let rhs = DivisorClass::anticanonical().scaled(&int(relation.multiple as i64));
        let diff = &lhs - &rhs;
        self.generators()
            .into_iter()
            .map(|g| Ok((g, self.intersect_generator(&diff, g)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn d(p: usize, n: usize) -> DivisorClass {
        DivisorClass::generator(Generator::node(p, n))
    }

    #[test]
    fn basic_pairings() {
        let t = GramTable::new(5, &[], false);
        let k = DivisorClass::canonical();
        assert_eq!(t.intersect(&k, &k).unwrap(), int(5));

        let t = GramTable::new(3, &[DynkinType::a(2)], true);
        assert_eq!(t.intersect(&d(0, 1), &d(0, 2)).unwrap(), int(1));
        let e = DivisorClass::generator(Generator::MinusOneCurve);
        assert_eq!(t.intersect(&e, &DivisorClass::canonical()).unwrap(), int(-1));
        assert_eq!(t.intersect(&e, &e).unwrap(), int(-1));
        assert_eq!(t.intersect(&e, &d(0, 1)).unwrap(), int(0));
    }

    #[test]
    fn distinct_points_are_orthogonal() {
        let t = GramTable::new(1, &[DynkinType::a(2), DynkinType::a(2)], false);
        assert_eq!(t.intersect(&d(0, 1), &d(1, 1)).unwrap(), int(0));
        assert_eq!(t.intersect(&d(1, 2), &d(1, 2)).unwrap(), int(-2));
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let t = GramTable::new(3, &[DynkinType::a(1)], false);
        let e = DivisorClass::generator(Generator::MinusOneCurve);
        assert_eq!(
            t.intersect(&e, &e),
            Err(AlgebraError::UnknownGenerator(Generator::MinusOneCurve))
        );
        assert!(t.intersect(&d(0, 2), &d(0, 1)).is_err());
        assert!(t.intersect(&d(1, 1), &d(0, 1)).is_err());
    }

    #[test]
    fn minus_one_curve_residual_is_parametric_in_degree() {
        for degree in 1..=8 {
            let t = GramTable::new(degree, &[], true);
            let rel = Relation::new(
                3,
                DivisorClass::term(Generator::MinusOneCurve, int(2)),
                "F",
            );
            let f = t.solve_residual(&rel).unwrap();
            let dd = degree as i64;
            assert_eq!(f.pairing_with(Generator::MinusOneCurve), Some(&int(5)));
            assert_eq!(f.canonical_degree(), &int(-(3 * dd - 2)));
            assert_eq!(f.self_intersection(), &int(9 * dd - 16));
        }
    }

    #[test]
    fn a1_quartic_residual() {
        let t = GramTable::new(3, &[DynkinType::a(1)], false);
        let rel = Relation::new(4, DivisorClass::term(Generator::node(0, 1), int(3)), "F");
        let f = t.solve_residual(&rel).unwrap();
        assert_eq!(f.pairing_with(Generator::node(0, 1)), Some(&int(6)));
        assert_eq!(f.canonical_degree(), &int(-12));
        assert_eq!(f.self_intersection(), &int(30));
    }

    #[test]
    fn identity_relation() {
        let t = GramTable::new(6, &[], false);
        let f = t.solve_residual(&Relation::new(1, DivisorClass::zero(), "F")).unwrap();
        assert_eq!(f.self_intersection(), &int(6));
        assert_eq!(f.canonical_degree(), &int(-6));
    }

    #[test]
    fn residual_pairs_with_later_residuals() {
        let mut t = GramTable::new(4, &[DynkinType::a(1)], false);
        let f1 = t.define_residual(&Relation::new(1, d(0, 1), "F1")).unwrap();
        let f2 = t.define_residual(&Relation::new(2, DivisorClass::zero(), "F2")).unwrap();
        let a = DivisorClass::generator(f1);
        let b = DivisorClass::generator(f2);
        // F1 = -K - D, F2 = -2K: F1.F2 = 2d
        assert_eq!(t.intersect(&a, &b).unwrap(), int(8));
        assert_eq!(t.intersect(&b, &a).unwrap(), int(8));
        assert_eq!(t.intersect(&a, &a).unwrap(), int(4 - 2));
        for (_, defect) in t.relation_defects(&t.residual(f1).unwrap().relation.clone(), f1).unwrap() {
            assert!(defect.is_zero());
        }
    }

    #[test]
    fn zero_multiple_rejected() {
        let t = GramTable::new(4, &[], false);
        assert_eq!(
            t.solve_residual(&Relation::new(0, DivisorClass::zero(), "F")),
            Err(AlgebraError::ZeroMultiple)
        );
    }

    #[test]
    fn display_forms() {
        let c = &d(0, 1).scaled(&int(2)) + &DivisorClass::generator(Generator::MinusOneCurve);
        assert_eq!(c.to_string(), "2D1@1 + E");
        let rel = Relation::new(3, c, "F");
        assert_eq!(rel.to_string(), "-3K ~ 2D1@1 + E + F");
        assert_eq!(DivisorClass::anticanonical().to_string(), "-K");
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [Generator::Canonical, Generator::MinusOneCurve, Generator::node(2, 7), Generator::Residual(3)] {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        for bad in ["D0@1", "D1@0", "D1", "X", "F#x", ""] {
            assert!(bad.parse::<Generator>().is_err(), "{bad}");
        }
    }
}
