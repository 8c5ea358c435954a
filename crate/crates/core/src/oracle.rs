//! Evaluation of symmetric functions as explicit polynomials in finitely
//! many variables.
//!
//! This is deliberately independent of the transition matrices: every basis
//! element is built from its textbook definition (monomial symmetrization,
//! squarefree products, power sums, semistandard tableaux, all monomials of a
//! degree), and a [`SymFunc`] is expanded by substituting `h_n` polynomials
//! into its h coordinates.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::partition::{partitions_of, Partition, PartitionFilter};
use crate::symfunc::{Basis, SymFuncError};
use crate::{Rat, SymFunc};

/// A polynomial in `vars` variables; keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u8>, Rat>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Polynomial::monomial(vec![0; vars], Rat::one())
    }

    pub fn monomial(exponents: Vec<u8>, c: Rat) -> Self {
        let vars = exponents.len();
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, exponents: &[u8]) -> Rat {
        self.terms.get(exponents).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rat) {
        assert_eq!(self.vars, other.vars);
        for (e, x) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += x * c;
        }
        self.terms.retain(|_, x| !x.is_zero());
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars);
        let mut out: BTreeMap<Vec<u8>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *out.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        out.retain(|_, x| !x.is_zero());
        Polynomial {
            vars: self.vars,
            terms: out,
        }
    }

    /// Value at the given point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }
}

/// All exponent vectors of total degree `d` in `vars` variables.
fn exponent_vectors(vars: usize, d: usize) -> Vec<Vec<u8>> {
    fn go(vars: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() + 1 == vars {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=d {
            prefix.push(k as u8);
            go(vars, d - k, prefix, out);
            prefix.pop();
        }
    }
    if vars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    go(vars, d, &mut Vec::new(), &mut out);
    out
}

/// `h_n`: the sum of all monomials of degree `n`.
pub fn h_poly(n: usize, vars: usize) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for e in exponent_vectors(vars, n) {
        p.terms.insert(e, Rat::one());
    }
    p
}

/// `e_n`: the sum of all squarefree monomials of degree `n`.
pub fn e_poly(n: usize, vars: usize) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for e in exponent_vectors(vars, n) {
        if e.iter().all(|&k| k <= 1) {
            p.terms.insert(e, Rat::one());
        }
    }
    p
}

/// `p_n = Σ x_i^n`.
pub fn p_poly(n: usize, vars: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one(vars);
    }
    let mut p = Polynomial::zero(vars);
    for i in 0..vars {
        let mut e = vec![0u8; vars];
        e[i] = n as u8;
        p.terms.insert(e, Rat::one());
    }
    p
}

/// `m_λ`: the sum of distinct monomials whose exponents rearrange `λ`.
pub fn m_poly(lambda: &Partition, vars: usize) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    if lambda.len() > vars {
        return p;
    }
    for e in exponent_vectors(vars, lambda.size()) {
        let mut sorted: Vec<u32> = e.iter().filter(|&&k| k > 0).map(|&k| k as u32).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted == lambda.parts() {
            p.terms.insert(e, Rat::one());
        }
    }
    p
}

/// `s_λ` as the generating function of semistandard tableaux with entries
/// in `1..=vars`.
pub fn s_poly(lambda: &Partition, vars: usize) -> Polynomial {
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let mut filling = vec![vec![0u8; lambda.max_part() as usize]; lambda.len()];
    let mut out = Polynomial::zero(vars);
    fn fill(idx: usize, cells: &[(usize, usize)], filling: &mut Vec<Vec<u8>>, vars: usize, out: &mut Polynomial) {
        if idx == cells.len() {
            let mut e = vec![0u8; vars];
            for &(r, c) in cells {
                e[filling[r - 1][c - 1] as usize - 1] += 1;
            }
            *out.terms.entry(e).or_insert_with(Rat::zero) += Rat::one();
            return;
        }
        let (r, c) = cells[idx];
        let left = if c > 1 { filling[r - 1][c - 2] } else { 1 };
        let above = if r > 1 { filling[r - 2][c - 1] + 1 } else { 1 };
        for v in left.max(above)..=vars as u8 {
            filling[r - 1][c - 1] = v;
            fill(idx + 1, cells, filling, vars, out);
        }
    }
    if vars > 0 || lambda.is_empty() {
        fill(0, &cells, &mut filling, vars, &mut out);
    }
    out
}

fn product(lambda: &Partition, vars: usize, generator: impl Fn(usize, usize) -> Polynomial) -> Polynomial {
    lambda.parts().iter().fold(Polynomial::one(vars), |acc, &part| {
        acc.mul(&generator(part as usize, vars))
    })
}

/// The basis element `B_λ` built from its definition.
pub fn basis_element_poly(basis: Basis, lambda: &Partition, vars: usize) -> Polynomial {
    match basis {
        Basis::H => product(lambda, vars, h_poly),
        Basis::E => product(lambda, vars, e_poly),
        Basis::P => product(lambda, vars, p_poly),
        Basis::M => m_poly(lambda, vars),
        Basis::S => s_poly(lambda, vars),
    }
}

/// Expands `f` in `vars` variables. Requires `vars ≥` the top degree of `f`,
/// below which distinct symmetric functions can collide.
pub fn monomial_eval_oracle(f: &SymFunc, vars: usize) -> Result<Polynomial, SymFuncError> {
    let degree = f.max_degree();
    if vars < degree {
        return Err(SymFuncError::TooFewVariables { vars, degree });
    }
    let hs: Vec<Polynomial> = (0..=degree).map(|n| h_poly(n, vars)).collect();
    let mut out = Polynomial::zero(vars);
    for (lambda, c) in f.h_terms() {
        let term = product(lambda, vars, |n, _| hs[n].clone());
        out.add_scaled(&term, c);
    }
    Ok(out)
}

/// Expands a basis-coordinate vector directly from basis-element definitions.
pub fn expansion_poly(basis: Basis, terms: &BTreeMap<Partition, Rat>, vars: usize) -> Polynomial {
    let mut out = Polynomial::zero(vars);
    for (lambda, c) in terms {
        out.add_scaled(&basis_element_poly(basis, lambda, vars), c);
    }
    out
}

/// Every partition of every degree up to `max` (for sweeps).
pub fn partitions_up_to(max: usize) -> Vec<Partition> {
    (0..=max)
        .flat_map(|d| partitions_of(d, PartitionFilter::default()))
        .collect()
}
