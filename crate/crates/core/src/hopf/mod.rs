//! Finitely presented graded connected bialgebras with a character, and the
//! canonical morphism into quasisymmetric functions
//!
//! ```text
//! Ψ(h) = Σ_{α ⊨ n} ζ_α(h) M_α,
//! ```
//!
//! where `ζ_α(h)` applies the left-nested `(ℓ(α)-1)`-fold coproduct,
//! projects to multidegree `α` and evaluates the character on each leg.
//!
//! A presentation fixes a finite basis in each degree `0..=max_degree`;
//! products landing above `max_degree` are truncated.

pub mod gallery;
pub mod qsym;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use num::{BigInt, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Composition;
use crate::Rat;

pub use qsym::{qsym_to_sym, sym_to_qsym, QSymFunc};

/// Position of a basis element: `(degree, index within degree)`.
pub type Idx = (usize, usize);

/// The unit, the unique basis element of degree 0.
pub const UNIT: Idx = (0, 0);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("invalid presentation JSON: {0}")]
    Json(String),
    #[error("basis for degree {0} is missing")]
    MissingDegree(usize),
    #[error("basis key {0:?} is not a degree in 0..=max_degree")]
    BadDegreeKey(String),
    #[error("degree 0 must hold exactly one basis element")]
    NotConnected,
    #[error("basis label {0:?} appears twice")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("no basis element {index} in degree {degree}")]
    IndexOutOfRange { degree: i128, index: i128 },
    #[error("{table} entry has degrees {deg_a} + {deg_b} != {deg_c}")]
    DegreeMismatch {
        table: &'static str,
        deg_a: usize,
        deg_b: usize,
        deg_c: usize,
    },
    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),
    #[error("{0} entry involving the unit; these are implied")]
    UnitEntry(&'static str),
    #[error("{table} entry for {key} is listed twice")]
    DuplicateEntry { table: &'static str, key: String },
    #[error("character value for {0:?} is missing")]
    MissingCharacter(String),
    #[error("character must send the unit to 1")]
    BadUnitCharacter,
    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("not symmetric: M{left} and M{right} have different coefficients")]
    NotSymmetric { left: Composition, right: Composition },
}

/// A linear combination of basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Idx, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(idx: Idx) -> Self {
        Element::from_terms([(idx, Rat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Idx, Rat)>) -> Self {
        let mut out = Element::zero();
        for (i, c) in terms {
            out.add_term(i, c);
        }
        out
    }

    fn add_term(&mut self, idx: Idx, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Idx, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|i| i.0).collect();
        d.dedup();
        d
    }

    pub fn scale(&self, c: &Rat) -> Element {
        Element::from_terms(self.terms.iter().map(|(i, x)| (*i, x * c)))
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.clone());
        }
        out
    }
}

type Tensor2 = BTreeMap<(Idx, Idx), Rat>;
type Tensor3 = BTreeMap<(Idx, Idx, Idx), Rat>;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rat>, key: K, c: Rat) {
    let entry = map.entry(key).or_insert_with(Rat::zero);
    *entry += c;
}

fn prune<K: Ord>(mut map: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
    map.retain(|_, c| !c.is_zero());
    map
}

/// The on-disk form of a presentation. Structure-constant rows are
/// `[deg_a, i, deg_b, j, deg_c, k, num, den]`: in `product`,
/// `e_{a,i} e_{b,j} ∋ (num/den) e_{c,k}`; in `coproduct`,
/// `Δ(e_{c,k}) ∋ (num/den) e_{a,i} ⊗ e_{b,j}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub max_degree: usize,
    pub basis: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub product: Vec<[i128; 8]>,
    #[serde(default)]
    pub coproduct: Vec<[i128; 8]>,
    pub character: BTreeMap<String, [i128; 2]>,
}

/// A graded connected bialgebra with a linear functional `χ`, given by
/// structure constants. Products with the unit and `Δ(1) = 1 ⊗ 1` are
/// implied; all other coproduct terms, including `x ⊗ 1` and `1 ⊗ x`, are
/// explicit.
#[derive(Debug, Clone)]
pub struct HopfPresentation {
    max_degree: usize,
    labels: Vec<Vec<String>>,
    lookup: HashMap<String, Idx>,
    product: HashMap<(Idx, Idx), BTreeMap<Idx, Rat>>,
    coproduct: Vec<Vec<Tensor2>>,
    character: Vec<Vec<Rat>>,
    psi: OnceLock<Vec<Vec<QSymFunc>>>,
}

/// Builder input for [`HopfPresentation::new`]: product and coproduct maps
/// keyed by basis positions.
#[derive(Debug, Clone, Default)]
pub struct PresentationData {
    pub max_degree: usize,
    pub labels: Vec<Vec<String>>,
    pub product: Vec<(Idx, Idx, Idx, Rat)>,
    pub coproduct: Vec<(Idx, Idx, Idx, Rat)>,
    pub character: Vec<Vec<Rat>>,
}

impl HopfPresentation {
    /// Checks connectedness, gradedness, label uniqueness and index ranges.
    /// `product` rows are `(a, b, c, coeff)` meaning `a·b ∋ coeff·c`;
    /// `coproduct` rows are `(a, b, c, coeff)` meaning `Δc ∋ coeff·a⊗b`.
    pub fn new(data: PresentationData) -> Result<Self, HopfError> {
        let PresentationData {
            max_degree,
            labels,
            product: prod_rows,
            coproduct: coprod_rows,
            character,
        } = data;
        if labels.len() != max_degree + 1 {
            return Err(HopfError::MissingDegree(labels.len().min(max_degree + 1)));
        }
        if labels[0].len() != 1 {
            return Err(HopfError::NotConnected);
        }
        let mut lookup = HashMap::new();
        for (d, ls) in labels.iter().enumerate() {
            for (i, l) in ls.iter().enumerate() {
                if lookup.insert(l.clone(), (d, i)).is_some() {
                    return Err(HopfError::DuplicateLabel(l.clone()));
                }
            }
        }
        let in_range = |idx: Idx| -> Result<(), HopfError> {
            if idx.0 <= max_degree && idx.1 < labels[idx.0].len() {
                Ok(())
            } else {
                Err(HopfError::IndexOutOfRange {
                    degree: idx.0 as i128,
                    index: idx.1 as i128,
                })
            }
        };
        let mut product: HashMap<(Idx, Idx), BTreeMap<Idx, Rat>> = HashMap::new();
        let mut seen = HashSet::new();
        for (a, b, c, coeff) in prod_rows {
            in_range(a)?;
            in_range(b)?;
            in_range(c)?;
            if a.0 + b.0 != c.0 {
                return Err(HopfError::DegreeMismatch {
                    table: "product",
                    deg_a: a.0,
                    deg_b: b.0,
                    deg_c: c.0,
                });
            }
            if a.0 == 0 || b.0 == 0 {
                return Err(HopfError::UnitEntry("product"));
            }
            if !seen.insert((a, b, c)) {
                return Err(HopfError::DuplicateEntry {
                    table: "product",
                    key: format!("{}·{} -> {}", labels[a.0][a.1], labels[b.0][b.1], labels[c.0][c.1]),
                });
            }
            if !coeff.is_zero() {
                product.entry((a, b)).or_default().insert(c, coeff);
            }
        }
        let mut coproduct: Vec<Vec<Tensor2>> = labels.iter().map(|ls| vec![Tensor2::new(); ls.len()]).collect();
        coproduct[0][0].insert((UNIT, UNIT), Rat::one());
        let mut seen = HashSet::new();
        for (a, b, c, coeff) in coprod_rows {
            in_range(a)?;
            in_range(b)?;
            in_range(c)?;
            if a.0 + b.0 != c.0 {
                return Err(HopfError::DegreeMismatch {
                    table: "coproduct",
                    deg_a: a.0,
                    deg_b: b.0,
                    deg_c: c.0,
                });
            }
            if c.0 == 0 {
                return Err(HopfError::UnitEntry("coproduct"));
            }
            if !seen.insert((a, b, c)) {
                return Err(HopfError::DuplicateEntry {
                    table: "coproduct",
                    key: format!("{} -> {}⊗{}", labels[c.0][c.1], labels[a.0][a.1], labels[b.0][b.1]),
                });
            }
            if !coeff.is_zero() {
                coproduct[c.0][c.1].insert((a, b), coeff);
            }
        }
        if character.len() != labels.len() || character.iter().zip(&labels).any(|(c, l)| c.len() != l.len()) {
            let missing = labels
                .iter()
                .enumerate()
                .find_map(|(d, ls)| ls.get(character.get(d).map_or(0, Vec::len)).cloned())
                .unwrap_or_default();
            return Err(HopfError::MissingCharacter(missing));
        }
        if !character[0][0].is_one() {
            return Err(HopfError::BadUnitCharacter);
        }
        Ok(HopfPresentation {
            max_degree,
            labels,
            lookup,
            product,
            coproduct,
            character,
            psi: OnceLock::new(),
        })
    }

    pub fn from_file(file: PresentationFile) -> Result<Self, HopfError> {
        let d = file.max_degree;
        let mut labels = vec![None; d + 1];
        for (key, ls) in file.basis {
            let deg: usize = key.parse().map_err(|_| HopfError::BadDegreeKey(key.clone()))?;
            if deg > d {
                return Err(HopfError::BadDegreeKey(key));
            }
            labels[deg] = Some(ls);
        }
        let labels: Vec<Vec<String>> = labels
            .into_iter()
            .enumerate()
            .map(|(deg, l)| l.ok_or(HopfError::MissingDegree(deg)))
            .collect::<Result<_, _>>()?;
        if labels[0].len() != 1 {
            return Err(HopfError::NotConnected);
        }
        let idx = |deg: i128, i: i128| -> Result<Idx, HopfError> {
            match (usize::try_from(deg), usize::try_from(i)) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                _ => Err(HopfError::IndexOutOfRange { degree: deg, index: i }),
            }
        };
        let rows = |rows: Vec<[i128; 8]>, table: &'static str| -> Result<Vec<(Idx, Idx, Idx, Rat)>, HopfError> {
            rows.into_iter()
                .map(|r| {
                    if r[7] == 0 {
                        return Err(HopfError::ZeroDenominator(table));
                    }
                    Ok((
                        idx(r[0], r[1])?,
                        idx(r[2], r[3])?,
                        idx(r[4], r[5])?,
                        Rat::new(BigInt::from(r[6]), BigInt::from(r[7])),
                    ))
                })
                .collect()
        };
        let product = rows(file.product, "product")?;
        let coproduct = rows(file.coproduct, "coproduct")?;
        let mut character = Vec::with_capacity(labels.len());
        for ls in &labels {
            let mut row = Vec::with_capacity(ls.len());
            for l in ls {
                let [num, den] = *file
                    .character
                    .get(l)
                    .ok_or_else(|| HopfError::MissingCharacter(l.clone()))?;
                if den == 0 {
                    return Err(HopfError::ZeroDenominator("character"));
                }
                row.push(Rat::new(BigInt::from(num), BigInt::from(den)));
            }
            character.push(row);
        }
        if let Some(extra) = file
            .character
            .keys()
            .find(|l| !labels.iter().flatten().any(|x| x == *l))
        {
            return Err(HopfError::UnknownLabel(extra.clone()));
        }
        HopfPresentation::new(PresentationData {
            max_degree: d,
            labels,
            product,
            coproduct,
            character,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, HopfError> {
        let file: PresentationFile = serde_json::from_str(s).map_err(|e| HopfError::Json(e.to_string()))?;
        HopfPresentation::from_file(file)
    }

    pub fn to_file(&self) -> PresentationFile {
        let frac = |c: &Rat| -> [i128; 2] {
            [
                c.numer().to_i128().expect("constant fits in i128"),
                c.denom().to_i128().expect("constant fits in i128"),
            ]
        };
        let row = |a: Idx, b: Idx, c: Idx, x: &Rat| -> [i128; 8] {
            let [num, den] = frac(x);
            [
                a.0 as i128,
                a.1 as i128,
                b.0 as i128,
                b.1 as i128,
                c.0 as i128,
                c.1 as i128,
                num,
                den,
            ]
        };
        let mut product: Vec<[i128; 8]> = self
            .product
            .iter()
            .flat_map(|(&(a, b), out)| out.iter().map(move |(&c, x)| row(a, b, c, x)))
            .collect();
        product.sort();
        let mut coproduct = Vec::new();
        for (d, per) in self.coproduct.iter().enumerate().skip(1) {
            for (k, t) in per.iter().enumerate() {
                for (&(a, b), x) in t {
                    coproduct.push(row(a, b, (d, k), x));
                }
            }
        }
        PresentationFile {
            max_degree: self.max_degree,
            basis: self
                .labels
                .iter()
                .enumerate()
                .map(|(d, ls)| (d.to_string(), ls.clone()))
                .collect(),
            product,
            coproduct,
            character: self
                .labels
                .iter()
                .flatten()
                .map(|l| (l.clone(), frac(self.character_of(self.lookup[l]))))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_file()).expect("plain data serializes");
        let mut out = String::new();
        write_compact_rows(&value, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn label(&self, idx: Idx) -> &str {
        &self.labels[idx.0][idx.1]
    }

    pub fn index_of(&self, label: &str) -> Result<Idx, HopfError> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| HopfError::UnknownLabel(label.to_string()))
    }

    pub fn element(&self, label: &str) -> Result<Element, HopfError> {
        Ok(Element::basis(self.index_of(label)?))
    }

    /// Positive-degree basis elements in degree order.
    pub fn basis_indices(&self) -> impl Iterator<Item = Idx> + '_ {
        self.labels
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(d, ls)| (0..ls.len()).map(move |i| (d, i)))
    }

    fn character_of(&self, idx: Idx) -> &Rat {
        &self.character[idx.0][idx.1]
    }

    fn basis_mul(&self, a: Idx, b: Idx) -> Element {
        if a == UNIT {
            return Element::basis(b);
        }
        if b == UNIT {
            return Element::basis(a);
        }
        match self.product.get(&(a, b)) {
            Some(out) => Element::from_terms(out.iter().map(|(i, c)| (*i, c.clone()))),
            None => Element::zero(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                if i.0 + j.0 > self.max_degree {
                    continue;
                }
                out = out.add(&self.basis_mul(*i, *j).scale(&(x * y)));
            }
        }
        out
    }

    /// Product of the basis elements named by `word`; the empty word is 1.
    pub fn word(&self, word: &[&str]) -> Result<Element, HopfError> {
        let mut acc = Element::basis(UNIT);
        for l in word {
            acc = self.mul(&acc, &self.element(l)?);
        }
        Ok(acc)
    }

    fn coproduct_tensor(&self, a: &Element) -> Tensor2 {
        let mut out = Tensor2::new();
        for (i, x) in &a.terms {
            for (k, y) in &self.coproduct[i.0][i.1] {
                add_into(&mut out, *k, x * y);
            }
        }
        prune(out)
    }

    /// `Δ(a)` as `(left, right, coefficient)` triples.
    pub fn coproduct(&self, a: &Element) -> Vec<(Idx, Idx, Rat)> {
        self.coproduct_tensor(a)
            .into_iter()
            .map(|((l, r), c)| (l, r, c))
            .collect()
    }

    pub fn counit(&self, a: &Element) -> Rat {
        a.terms.get(&UNIT).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn character(&self, a: &Element) -> Rat {
        a.terms.iter().map(|(i, c)| c * self.character_of(*i)).sum()
    }

    fn tensor_mul(&self, s: &Tensor2, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::new();
        for ((a1, a2), x) in s {
            for ((b1, b2), y) in t {
                if a1.0 + b1.0 > self.max_degree || a2.0 + b2.0 > self.max_degree {
                    continue;
                }
                let left = self.basis_mul(*a1, *b1);
                let right = self.basis_mul(*a2, *b2);
                for (l, u) in &left.terms {
                    for (r, v) in &right.terms {
                        add_into(&mut out, (*l, *r), x * y * u * v);
                    }
                }
            }
        }
        prune(out)
    }

    /// Checks every axiom degreewise by contracting structure constants.
    pub fn validate(&self) -> ValidationReport {
        let basis: Vec<Idx> = self.basis_indices().collect();
        let all: Vec<Idx> = std::iter::once(UNIT).chain(basis.iter().copied()).collect();
        let max = self.max_degree;

        let mut associative = true;
        for &a in &basis {
            for &b in basis.iter().filter(|b| a.0 + b.0 <= max) {
                let ab = self.basis_mul(a, b);
                for &c in basis.iter().filter(|c| a.0 + b.0 + c.0 <= max) {
                    let left = self.mul(&ab, &Element::basis(c));
                    let right = self.mul(&Element::basis(a), &self.basis_mul(b, c));
                    associative &= left == right;
                }
            }
        }

        let mut coassociative = true;
        let mut counital = true;
        let mut cocommutative = true;
        for &c in &all {
            let delta = &self.coproduct[c.0][c.1];
            let mut left = Tensor3::new();
            let mut right = Tensor3::new();
            for (&(a, b), x) in delta {
                for (&(a1, a2), y) in &self.coproduct[a.0][a.1] {
                    add_into(&mut left, (a1, a2, b), x * y);
                }
                for (&(b1, b2), y) in &self.coproduct[b.0][b.1] {
                    add_into(&mut right, (a, b1, b2), x * y);
                }
            }
            coassociative &= prune(left) == prune(right);

            let mut eps_left = Element::zero();
            let mut eps_right = Element::zero();
            for (&(a, b), x) in delta {
                if a == UNIT {
                    eps_left.add_term(b, x.clone());
                }
                if b == UNIT {
                    eps_right.add_term(a, x.clone());
                }
            }
            counital &= eps_left == Element::basis(c) && eps_right == Element::basis(c);

            cocommutative &= delta.iter().all(|(&(a, b), x)| delta.get(&(b, a)) == Some(x));
        }

        let mut bialgebra_compatible = true;
        let mut character_multiplicative = true;
        for &a in &basis {
            for &b in basis.iter().filter(|b| a.0 + b.0 <= max) {
                let ab = self.basis_mul(a, b);
                let lhs = self.coproduct_tensor(&ab);
                let rhs = self.tensor_mul(&self.coproduct[a.0][a.1], &self.coproduct[b.0][b.1]);
                bialgebra_compatible &= lhs == rhs;
                character_multiplicative &= self.character(&ab) == self.character_of(a) * self.character_of(b);
            }
        }

        ValidationReport {
            associative,
            coassociative,
            counital,
            bialgebra_compatible,
            cocommutative,
            character_multiplicative,
            canonical_integral: self.psi_table().iter().flatten().all(QSymFunc::is_integral),
        }
    }

    /// `ζ_α(h)`; `h` must be homogeneous of degree `|α|` (or zero).
    pub fn zeta_alpha(&self, h: &Element, alpha: &Composition) -> Result<Rat, HopfError> {
        let n = alpha.size();
        if h.terms.keys().any(|i| i.0 != n) {
            return Err(HopfError::NotHomogeneous { expected: n });
        }
        Ok(h.terms
            .iter()
            .map(|(i, c)| c * self.zeta_basis(*i, alpha.parts()))
            .sum())
    }

    fn zeta_basis(&self, idx: Idx, alpha: &[u32]) -> Rat {
        let Some((&last, rest)) = alpha.split_last() else {
            return if idx == UNIT { Rat::one() } else { Rat::zero() };
        };
        self.coproduct[idx.0][idx.1]
            .iter()
            .filter(|((_, b), _)| b.0 == last as usize)
            .map(|(&(a, b), x)| x * self.character_of(b) * self.zeta_basis(a, rest))
            .sum()
    }

    /// `Ψ` on every basis element, built by peeling the last leg of the
    /// left-nested iterated coproduct.
    fn psi_table(&self) -> &Vec<Vec<QSymFunc>> {
        self.psi.get_or_init(|| {
            let mut table: Vec<Vec<QSymFunc>> = Vec::with_capacity(self.labels.len());
            table.push(vec![QSymFunc::one()]);
            for d in 1..=self.max_degree {
                let row = (0..self.labels[d].len())
                    .map(|i| {
                        let mut acc = QSymFunc::zero();
                        for (&(a, b), x) in &self.coproduct[d][i] {
                            if b.0 == 0 {
                                continue;
                            }
                            let c = x * self.character_of(b);
                            if c.is_zero() {
                                continue;
                            }
                            acc = acc + table[a.0][a.1].append_part(b.0 as u32).scale(&c);
                        }
                        acc
                    })
                    .collect();
                table.push(row);
            }
            table
        })
    }

    /// `Ψ(h) = Σ_α ζ_α(h) M_α`, extended linearly.
    pub fn canonical_morphism(&self, h: &Element) -> QSymFunc {
        let table = self.psi_table();
        h.terms
            .iter()
            .fold(QSymFunc::zero(), |acc, (i, c)| acc + table[i.0][i.1].scale(c))
    }

    /// For each sample word `w = a_1 ⋯ a_r`, compares `χ(w)` with the target
    /// character of `Ψ(a_1)⋯Ψ(a_r)` and of `Ψ(w)`.
    pub fn check_character_preservation(&self, samples: &[Vec<&str>]) -> Result<Vec<CharacterCheck>, HopfError> {
        samples
            .iter()
            .map(|word| {
                let h = self.word(word)?;
                let source = self.character(&h);
                let image = self.canonical_morphism(&h).character();
                let factored = word
                    .iter()
                    .map(|l| self.element(l).map(|e| self.canonical_morphism(&e)))
                    .collect::<Result<Vec<_>, _>>()?
                    .iter()
                    .fold(QSymFunc::one(), |acc, q| &acc * q)
                    .character();
                Ok(CharacterCheck {
                    word: word.iter().map(|s| s.to_string()).collect(),
                    preserved: source == image && source == factored,
                    source,
                    image,
                    factored,
                })
            })
            .collect()
    }

    /// `Ψ(ab) = Ψ(a)Ψ(b)` on basis pairs with `deg a + deg b ≤ max_total`.
    /// Returns the failing pairs.
    pub fn check_multiplicativity(&self, max_total: usize) -> Vec<(Idx, Idx)> {
        let basis: Vec<Idx> = self.basis_indices().collect();
        let limit = max_total.min(self.max_degree);
        let mut failures = Vec::new();
        for &a in &basis {
            for &b in basis.iter().filter(|b| a.0 + b.0 <= limit) {
                let lhs = self.canonical_morphism(&self.basis_mul(a, b));
                let rhs = &self.canonical_morphism(&Element::basis(a)) * &self.canonical_morphism(&Element::basis(b));
                if lhs != rhs {
                    failures.push((a, b));
                }
            }
        }
        failures
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub associative: bool,
    pub coassociative: bool,
    pub counital: bool,
    pub bialgebra_compatible: bool,
    pub cocommutative: bool,
    pub character_multiplicative: bool,
    /// Whether `Ψ` sends every basis element to an integral combination.
    pub canonical_integral: bool,
}

impl ValidationReport {
    /// A bialgebra with a multiplicative character; cocommutativity and
    /// integrality are reported separately.
    pub fn is_combinatorial_hopf(&self) -> bool {
        self.associative
            && self.coassociative
            && self.counital
            && self.bialgebra_compatible
            && self.character_multiplicative
    }

    pub fn all_true(&self) -> bool {
        self.is_combinatorial_hopf() && self.cocommutative && self.canonical_integral
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterCheck {
    pub word: Vec<String>,
    pub source: Rat,
    pub image: Rat,
    pub factored: Rat,
    pub preserved: bool,
}

/// Pretty JSON, except arrays of scalars stay on one line.
fn write_compact_rows(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let inner: Vec<String> = items
                .iter()
                .map(|x| serde_json::to_string(x).expect("scalars serialize"))
                .collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact_rows(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_compact_rows(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}
