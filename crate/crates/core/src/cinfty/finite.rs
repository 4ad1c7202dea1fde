//! Finite-dimensional graded algebras given by exact structure constants,
//! their cohomology rings, and comparison of cohomology rings along a
//! cochain map.
//!
//! # Text format
//!
//! One directive per line; `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! basis <label> <degree>              declare a basis element
//! d <from> <to> <coeff>               d(from) has coefficient <coeff> on <to>
//! mu <left> <right> <out> <coeff>     mu(left, right) has coefficient <coeff> on <out>
//! ```
//!
//! Labels are whitespace-free tokens, degrees are integers and coefficients
//! are integers or fractions `a/b`. Basis lines must precede any line that
//! uses their labels. Unlisted entries are zero, and products must be listed
//! for both orders of their arguments. The parsed algebra is checked to be a
//! commutative differential graded algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cinfty::graded::GradedElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Rational;

/// Labelled basis of a finite-dimensional graded vector space.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<i32>,
    slots: Vec<usize>,
    by_degree: BTreeMap<i32, Vec<usize>>,
}

impl GradedBasis {
    pub fn new(entries: Vec<(String, i32)>) -> Result<Arc<Self>> {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut slots = Vec::new();
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, (label, degree)) in entries.into_iter().enumerate() {
            if labels.contains(&label) {
                return Err(Error::Construction(format!("duplicate basis label {label}")));
            }
            let bucket = by_degree.entry(degree).or_default();
            slots.push(bucket.len());
            bucket.push(i);
            labels.push(label);
            degrees.push(degree);
        }
        Ok(Arc::new(GradedBasis {
            labels,
            degrees,
            slots,
            by_degree,
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.by_degree.get(&degree).map_or(0, Vec::len)
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn degree_of(&self, index: usize) -> i32 {
        self.degrees[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Global indices of the basis elements of `degree`, in slot order.
    pub fn indices_in_degree(&self, degree: i32) -> &[usize] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }
}

/// A homogeneous vector in a [`GradedBasis`].
#[derive(Clone)]
pub struct FiniteVector {
    basis: Arc<GradedBasis>,
    degree: i32,
    coords: Vec<Rational>,
}

impl FiniteVector {
    pub fn zero(basis: &Arc<GradedBasis>, degree: i32) -> Self {
        FiniteVector {
            basis: basis.clone(),
            degree,
            coords: vec![Rational::zero(); basis.dim(degree)],
        }
    }

    pub fn basis_vector(basis: &Arc<GradedBasis>, index: usize) -> Self {
        let degree = basis.degree_of(index);
        let mut v = Self::zero(basis, degree);
        v.coords[basis.slots[index]] = Rational::one();
        v
    }

    pub fn from_coords(basis: &Arc<GradedBasis>, degree: i32, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != basis.dim(degree) {
            return Err(Error::Dimension(format!(
                "degree {degree} has dimension {}, got {} coordinates",
                basis.dim(degree),
                coords.len()
            )));
        }
        Ok(FiniteVector {
            basis: basis.clone(),
            degree,
            coords,
        })
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `(global index, coefficient)` for the nonzero coordinates.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> {
        let idx = self.basis.indices_in_degree(self.degree);
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(s, c)| (idx[s], c))
    }

    fn same_space(&self, other: &FiniteVector) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }
}

impl PartialEq for FiniteVector {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.degree == other.degree && self.coords == other.coords
    }
}

impl fmt::Debug for FiniteVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteVector[{}]({})", self.degree, self)
    }
}

impl fmt::Display for FiniteVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.entries() {
            let label = self.basis.label(i);
            let mag = c.abs();
            let body = if label == "1" {
                mag.to_string()
            } else if mag.is_one() {
                label.to_string()
            } else {
                format!("{mag} {label}")
            };
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl GradedElement for FiniteVector {
    fn degree(&self) -> i32 {
        self.degree
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        assert!(self.same_space(other), "vectors from different spaces");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "sum of vectors of different degrees");
        FiniteVector {
            basis: self.basis.clone(),
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    fn scaled(&self, c: &Rational) -> Self {
        FiniteVector {
            basis: self.basis.clone(),
            degree: self.degree,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    fn zero_of_degree(&self, degree: i32) -> Self {
        FiniteVector::zero(&self.basis, degree)
    }
}

/// A homogeneous linear map between graded spaces, one matrix per source
/// degree (missing blocks are zero).
#[derive(Clone, Debug)]
pub struct GradedLinearMap {
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedLinearMap {
    pub fn new(source: &Arc<GradedBasis>, target: &Arc<GradedBasis>, degree: i32) -> Self {
        GradedLinearMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            blocks: BTreeMap::new(),
        }
    }

    /// Tabulates `f` on every source basis vector.
    pub fn from_fn(
        source: &Arc<GradedBasis>,
        target: &Arc<GradedBasis>,
        degree: i32,
        f: impl Fn(&FiniteVector) -> FiniteVector,
    ) -> Self {
        let mut map = Self::new(source, target, degree);
        for k in source.degrees().collect::<Vec<_>>() {
            let cols: Vec<Vec<Rational>> = source
                .indices_in_degree(k)
                .iter()
                .map(|&i| {
                    let image = f(&FiniteVector::basis_vector(source, i));
                    assert_eq!(image.degree, k + degree, "map is not homogeneous");
                    image.coords
                })
                .collect();
            map.blocks
                .insert(k, Matrix::from_columns(target.dim(k + degree), &cols));
        }
        map
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn block(&self, source_degree: i32) -> Matrix {
        self.blocks.get(&source_degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.target.dim(source_degree + self.degree),
                self.source.dim(source_degree),
            )
        })
    }

    pub fn set_entry(&mut self, from: usize, to: usize, value: Rational) -> Result<()> {
        let k = self.source.degree_of(from);
        if self.target.degree_of(to) != k + self.degree {
            return Err(Error::Construction(format!(
                "entry {} -> {} does not have degree {}",
                self.source.label(from),
                self.target.label(to),
                self.degree
            )));
        }
        let rows = self.target.dim(k + self.degree);
        let cols = self.source.dim(k);
        let block = self.blocks.entry(k).or_insert_with(|| Matrix::zeros(rows, cols));
        block[(self.target.slots[to], self.source.slots[from])] = value;
        Ok(())
    }

    pub fn apply(&self, v: &FiniteVector) -> FiniteVector {
        assert!(
            Arc::ptr_eq(&v.basis, &self.source) || *v.basis == *self.source,
            "vector outside the source space"
        );
        let out_degree = v.degree + self.degree;
        match self.blocks.get(&v.degree) {
            Some(m) => FiniteVector {
                basis: self.target.clone(),
                degree: out_degree,
                coords: m.mul_vec(&v.coords),
            },
            None => FiniteVector::zero(&self.target, out_degree),
        }
    }
}

/// A finite graded space with a differential and a bilinear product given by
/// structure constants.
#[derive(Clone, Debug)]
pub struct FiniteGradedAlgebra {
    basis: Arc<GradedBasis>,
    d: GradedLinearMap,
    // products[i][j] = mu(e_i, e_j)
    products: Vec<Vec<FiniteVector>>,
}

impl FiniteGradedAlgebra {
    /// A commutative differential graded algebra. Checks `d^2 = 0`, graded
    /// commutativity, associativity and the Leibniz rule on all basis
    /// elements.
    pub fn new(basis: Arc<GradedBasis>, d: GradedLinearMap, products: Vec<Vec<FiniteVector>>) -> Result<Self> {
        let alg = Self::new_with_product(basis, d, products)?;
        alg.check_associative()?;
        Ok(alg)
    }

    /// A complex with a graded commutative product satisfying the Leibniz
    /// rule, such as a transferred `m_2`, which need only be associative up
    /// to homotopy.
    pub fn new_with_product(
        basis: Arc<GradedBasis>,
        d: GradedLinearMap,
        products: Vec<Vec<FiniteVector>>,
    ) -> Result<Self> {
        if d.degree != 1 || *d.source != *basis || *d.target != *basis {
            return Err(Error::Construction(
                "the differential must be a degree 1 endomorphism".to_string(),
            ));
        }
        if products.len() != basis.len() || products.iter().any(|row| row.len() != basis.len()) {
            return Err(Error::Construction("product table has the wrong shape".to_string()));
        }
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let p = &products[i][j];
                if p.degree != basis.degree_of(i) + basis.degree_of(j) || *p.basis != *basis {
                    return Err(Error::Construction(format!(
                        "product of {} and {} has the wrong degree",
                        basis.label(i),
                        basis.label(j)
                    )));
                }
            }
        }
        let alg = FiniteGradedAlgebra { basis, d, products };
        alg.check_differential()?;
        alg.check_commutative()?;
        alg.check_leibniz()?;
        Ok(alg)
    }

    fn basis_vectors(&self) -> Vec<FiniteVector> {
        (0..self.basis.len())
            .map(|i| FiniteVector::basis_vector(&self.basis, i))
            .collect()
    }

    fn check_differential(&self) -> Result<()> {
        for v in self.basis_vectors() {
            if !self.d(&self.d(&v)).is_zero() {
                return Err(Error::Construction(format!("d^2 does not vanish on {v}")));
            }
        }
        Ok(())
    }

    fn check_commutative(&self) -> Result<()> {
        let vs = self.basis_vectors();
        for a in &vs {
            for b in &vs {
                let sign = if (a.degree * b.degree) % 2 == 0 { 1 } else { -1 };
                if self.mul(a, b) != self.mul(b, a).signed(sign) {
                    return Err(Error::Construction(format!(
                        "product is not graded commutative on {a}, {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let vs = self.basis_vectors();
        for a in &vs {
            for b in &vs {
                let ab = self.mul(a, b);
                for c in &vs {
                    if self.mul(&ab, c) != self.mul(a, &self.mul(b, c)) {
                        return Err(Error::Construction(format!(
                            "product is not associative on {a}, {b}, {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> Result<()> {
        let vs = self.basis_vectors();
        for a in &vs {
            for b in &vs {
                let sign = if a.degree % 2 == 0 { 1 } else { -1 };
                let lhs = self.d(&self.mul(a, b));
                let rhs = self
                    .mul(&self.d(a), b)
                    .plus(&self.mul(a, &self.d(b)).signed(sign));
                if lhs.plus(&rhs.negated()).is_zero() {
                    continue;
                }
                return Err(Error::Construction(format!(
                    "Leibniz rule fails on {a}, {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn differential(&self) -> &GradedLinearMap {
        &self.d
    }

    pub fn d(&self, v: &FiniteVector) -> FiniteVector {
        self.d.apply(v)
    }

    pub fn mul(&self, a: &FiniteVector, b: &FiniteVector) -> FiniteVector {
        let mut out = FiniteVector::zero(&self.basis, a.degree + b.degree);
        for (i, ca) in a.entries() {
            for (j, cb) in b.entries() {
                out = out.plus(&self.products[i][j].scaled(&(ca * cb)));
            }
        }
        out
    }

    pub fn basis_vector(&self, label: &str) -> Option<FiniteVector> {
        self.basis
            .index_of(label)
            .map(|i| FiniteVector::basis_vector(&self.basis, i))
    }

    /// Parses the text format described in the module documentation.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(String, i32)> = Vec::new();
        let mut d_entries = Vec::new();
        let mut mu_entries = Vec::new();
        let err = |line: usize, message: String| Error::Parse { line, message };
        let known = |entries: &[(String, i32)], label: &str, line: usize| {
            if entries.iter().any(|(l, _)| l == label) {
                Ok(label.to_string())
            } else {
                Err(err(line, format!("unknown basis label {label}")))
            }
        };
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                ["basis", label, degree] => {
                    let degree: i32 = degree
                        .parse()
                        .map_err(|_| err(line, format!("bad degree {degree}")))?;
                    if entries.iter().any(|(l, _)| l == label) {
                        return Err(err(line, format!("duplicate basis label {label}")));
                    }
                    entries.push((label.to_string(), degree));
                }
                ["d", from, to, coeff] => {
                    let c = parse_rational(coeff).ok_or_else(|| err(line, format!("bad coefficient {coeff}")))?;
                    d_entries.push((line, known(&entries, from, line)?, known(&entries, to, line)?, c));
                }
                ["mu", a, b, out, coeff] => {
                    let c = parse_rational(coeff).ok_or_else(|| err(line, format!("bad coefficient {coeff}")))?;
                    mu_entries.push((
                        line,
                        known(&entries, a, line)?,
                        known(&entries, b, line)?,
                        known(&entries, out, line)?,
                        c,
                    ));
                }
                _ => return Err(err(line, format!("unrecognized directive: {content}"))),
            }
        }
        let basis = GradedBasis::new(entries)?;
        let mut d = GradedLinearMap::new(&basis, &basis, 1);
        for (line, from, to, c) in d_entries {
            let (f, t) = (basis.index_of(&from).unwrap(), basis.index_of(&to).unwrap());
            d.set_entry(f, t, c).map_err(|e| err(line, e.to_string()))?;
        }
        let mut products: Vec<Vec<FiniteVector>> = (0..basis.len())
            .map(|i| {
                (0..basis.len())
                    .map(|j| FiniteVector::zero(&basis, basis.degree_of(i) + basis.degree_of(j)))
                    .collect()
            })
            .collect();
        for (line, a, b, out, c) in mu_entries {
            let (i, j, k) = (
                basis.index_of(&a).unwrap(),
                basis.index_of(&b).unwrap(),
                basis.index_of(&out).unwrap(),
            );
            let slot = &mut products[i][j];
            if basis.degree_of(k) != slot.degree {
                return Err(err(line, format!("mu {a} {b} cannot have a component on {out}")));
            }
            slot.coords[basis.slots[k]] = c;
        }
        Self::new(basis, d, products)
    }

    /// Serializes to the text format; `parse(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let b = &self.basis;
        for i in 0..b.len() {
            out.push_str(&format!("basis {} {}\n", b.label(i), b.degree_of(i)));
        }
        for i in 0..b.len() {
            let image = self.d(&FiniteVector::basis_vector(b, i));
            for (j, c) in image.entries() {
                out.push_str(&format!("d {} {} {}\n", b.label(i), b.label(j), c));
            }
        }
        for i in 0..b.len() {
            for j in 0..b.len() {
                for (k, c) in self.products[i][j].entries() {
                    out.push_str(&format!("mu {} {} {} {}\n", b.label(i), b.label(j), b.label(k), c));
                }
            }
        }
        out
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!den.is_zero()).then(|| Rational::new(num, den))
}

/// Cohomology in one degree: representative cocycles of a basis of
/// `ker d / im d`.
#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub degree: i32,
    pub representatives: Vec<FiniteVector>,
    boundary_count: usize,
    // columns: boundary basis, then representatives
    frame: Matrix,
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    degrees: BTreeMap<i32, CohomologyDegree>,
    basis: Arc<GradedBasis>,
}

/// The cohomology of `(A, d)` with representative cocycles per degree.
pub fn cohomology(alg: &FiniteGradedAlgebra) -> Cohomology {
    let basis = alg.basis();
    let mut degrees = BTreeMap::new();
    for k in basis.degrees().collect::<Vec<_>>() {
        let dim = basis.dim(k);
        let dk = alg.differential().block(k);
        let cycles = if dk.rows() == 0 {
            (0..dim)
                .map(|i| {
                    let mut v = vec![Rational::zero(); dim];
                    v[i] = Rational::one();
                    v
                })
                .collect()
        } else {
            dk.kernel()
        };
        let d_prev = alg.differential().block(k - 1);
        let ech = d_prev.echelon();
        let mut columns: Vec<Vec<Rational>> = ech.pivots.iter().map(|&c| d_prev.column(c)).collect();
        let boundary_count = columns.len();
        let mut representatives = Vec::new();
        for z in cycles {
            let mut trial = columns.clone();
            trial.push(z.clone());
            if Matrix::from_columns(dim, &trial).rank() == trial.len() {
                columns = trial;
                representatives.push(FiniteVector::from_coords(basis, k, z).expect("dimension"));
            }
        }
        let frame = Matrix::from_columns(dim, &columns);
        degrees.insert(
            k,
            CohomologyDegree {
                degree: k,
                representatives,
                boundary_count,
                frame,
            },
        );
    }
    Cohomology {
        degrees,
        basis: basis.clone(),
    }
}

impl Cohomology {
    pub fn degree(&self, k: i32) -> Option<&CohomologyDegree> {
        self.degrees.get(&k)
    }

    pub fn betti(&self, k: i32) -> usize {
        self.degrees.get(&k).map_or(0, |c| c.representatives.len())
    }

    /// `(degree, Betti number)` for every degree of the underlying space.
    pub fn betti_numbers(&self) -> Vec<(i32, usize)> {
        self.degrees
            .iter()
            .map(|(&k, c)| (k, c.representatives.len()))
            .collect()
    }

    pub fn representatives(&self, k: i32) -> &[FiniteVector] {
        self.degrees.get(&k).map_or(&[], |c| c.representatives.as_slice())
    }

    /// Coordinates of the class of the cocycle `v` in the representative
    /// basis.
    pub fn class_of(&self, alg: &FiniteGradedAlgebra, v: &FiniteVector) -> Result<Vec<Rational>> {
        if *v.basis != *self.basis {
            return Err(Error::Dimension("vector from another space".to_string()));
        }
        if !alg.d(v).is_zero() {
            return Err(Error::Domain(format!("{v} is not a cocycle")));
        }
        let Some(c) = self.degrees.get(&v.degree) else {
            return Ok(Vec::new());
        };
        let x = c
            .frame
            .solve(&v.coords)
            .ok_or_else(|| Error::Domain(format!("{v} is not in the span of cocycles")))?;
        Ok(x[c.boundary_count..].to_vec())
    }

    /// Products of representatives, reduced to classes: entry
    /// `((p, i), (q, j))` is `[r^p_i * r^q_j]`.
    pub fn product_table(
        &self,
        alg: &FiniteGradedAlgebra,
    ) -> Result<BTreeMap<((i32, usize), (i32, usize)), Vec<Rational>>> {
        let mut out = BTreeMap::new();
        for (&p, cp) in &self.degrees {
            for (i, a) in cp.representatives.iter().enumerate() {
                for (&q, cq) in &self.degrees {
                    for (j, b) in cq.representatives.iter().enumerate() {
                        out.insert(((p, i), (q, j)), self.class_of(alg, &alg.mul(a, b))?);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of comparing cohomology rings along a cochain map.
#[derive(Clone, Debug)]
pub struct RingIsoReport {
    pub is_isomorphism: bool,
    /// Matrix of `[f_1]` in each degree, columns indexed by source classes.
    pub matrices: BTreeMap<i32, Matrix>,
    pub witnesses: Vec<String>,
}

/// Whether the cochain map `f1: A -> B` induces an isomorphism of
/// cohomology rings.
pub fn check_ring_isomorphism(
    f1: &dyn Fn(&FiniteVector) -> FiniteVector,
    a: &FiniteGradedAlgebra,
    b: &FiniteGradedAlgebra,
) -> Result<RingIsoReport> {
    let ha = cohomology(a);
    let hb = cohomology(b);
    let mut witnesses = Vec::new();
    let mut matrices = BTreeMap::new();
    let mut all_degrees: Vec<i32> = a.basis().degrees().chain(b.basis().degrees()).collect();
    all_degrees.sort_unstable();
    all_degrees.dedup();
    for k in all_degrees {
        let reps = ha.representatives(k);
        let mut cols = Vec::new();
        for r in reps {
            let image = f1(r);
            match hb.class_of(b, &image) {
                Ok(c) => cols.push(c),
                Err(e) => {
                    witnesses.push(format!("f1({r}) = {image}: {e}"));
                    cols.push(vec![Rational::zero(); hb.betti(k)]);
                }
            }
        }
        let m = Matrix::from_columns(hb.betti(k), &cols);
        if ha.betti(k) != hb.betti(k) {
            witnesses.push(format!(
                "degree {k}: Betti numbers {} and {} differ",
                ha.betti(k),
                hb.betti(k)
            ));
        } else if ha.betti(k) > 0 && m.determinant().is_zero() {
            witnesses.push(format!("degree {k}: [f1] is singular"));
        }
        matrices.insert(k, m);
    }
    for (&p, _) in &ha.degrees {
        for x in ha.representatives(p) {
            for (&q, _) in &ha.degrees {
                for y in ha.representatives(q) {
                    let lhs = hb.class_of(b, &f1(&a.mul(x, y)));
                    let rhs = hb.class_of(b, &b.mul(&f1(x), &f1(y)));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        _ => witnesses.push(format!("[f1] is not multiplicative on [{x}], [{y}]")),
                    }
                }
            }
        }
    }
    Ok(RingIsoReport {
        is_isomorphism: witnesses.is_empty(),
        matrices,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXTERIOR_TWO: &str = "\
# exterior algebra on a, b with d = 0
basis 1 0
basis a 1
basis b 1
basis ab 2
mu 1 1 1 1
mu 1 a a 1
mu a 1 a 1
mu 1 b b 1
mu b 1 b 1
mu 1 ab ab 1
mu ab 1 ab 1
mu a b ab 1
mu b a ab -1
";

    #[test]
    fn parse_and_zero_differential() {
        let alg = FiniteGradedAlgebra::parse(EXTERIOR_TWO).unwrap();
        let h = cohomology(&alg);
        assert_eq!(h.betti_numbers(), vec![(0, 1), (1, 2), (2, 1)]);
        let again = FiniteGradedAlgebra::parse(&alg.to_text()).unwrap();
        assert_eq!(again.to_text(), alg.to_text());
    }

    #[test]
    fn parse_errors() {
        let e = FiniteGradedAlgebra::parse("basis a 1\nd a q 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = FiniteGradedAlgebra::parse("basis a x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = FiniteGradedAlgebra::parse("frobnicate\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        // a one-sided product breaks graded commutativity
        let e = FiniteGradedAlgebra::parse("basis a 1\nbasis b 1\nbasis ab 2\nmu a b ab 1\n").unwrap_err();
        assert!(matches!(e, Error::Construction(_)));
        // d^2 != 0
        let e = FiniteGradedAlgebra::parse("basis a 0\nbasis b 1\nbasis c 2\nd a b 1\nd b c 1\n").unwrap_err();
        assert!(matches!(e, Error::Construction(_)));
    }

    #[test]
    fn identity_is_ring_isomorphism() {
        let alg = FiniteGradedAlgebra::parse(EXTERIOR_TWO).unwrap();
        let report = check_ring_isomorphism(&|v: &FiniteVector| v.clone(), &alg, &alg).unwrap();
        assert!(report.is_isomorphism, "{:?}", report.witnesses);
        let zero = |v: &FiniteVector| {
            if v.degree() == 1 {
                v.zero_of_degree(1)
            } else {
                v.clone()
            }
        };
        let report = check_ring_isomorphism(&zero, &alg, &alg).unwrap();
        assert!(!report.is_isomorphism);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn acyclic_pair() {
        let alg = FiniteGradedAlgebra::parse(
            "basis 1 0\nbasis u 1\nbasis v 2\nd u v 1\nmu 1 1 1 1\nmu 1 u u 1\nmu u 1 u 1\nmu 1 v v 1\nmu v 1 v 1\n",
        )
        .unwrap();
        let h = cohomology(&alg);
        assert_eq!(h.betti_numbers(), vec![(0, 1), (1, 0), (2, 0)]);
        let v = alg.basis_vector("v").unwrap();
        assert!(h.class_of(&alg, &v).unwrap().is_empty());
        assert!(h.class_of(&alg, &alg.basis_vector("u").unwrap()).is_err());
    }
}
