//! Example presentations: truncations of Sym and of its subalgebras
//! `Z[h_1, …, h_k]` in the h basis, the binomial algebra, and corrupted
//! copies used as negative controls.

use num::{BigInt, One};

use super::{Element, HopfError, HopfPresentation, Idx, PresentationData};
use crate::partition::{partitions_of, Partition, PartitionFilter};
use crate::{Rat, SymFunc};

/// Label of `h_λ`; the unit is `"1"`.
pub fn h_label(lambda: &Partition) -> String {
    if lambda.is_empty() {
        "1".to_string()
    } else {
        format!("h{lambda}")
    }
}

fn h_presentation(filter: PartitionFilter, max_degree: usize) -> HopfPresentation {
    let parts: Vec<Vec<Partition>> = (0..=max_degree).map(|d| partitions_of(d, filter)).collect();
    let position = |lambda: &Partition| -> Idx {
        let d = lambda.size();
        (
            d,
            parts[d].iter().position(|p| p == lambda).expect("closed under merge"),
        )
    };
    let mut data = PresentationData {
        max_degree,
        labels: parts.iter().map(|ps| ps.iter().map(h_label).collect()).collect(),
        character: parts.iter().map(|ps| vec![Rat::one(); ps.len()]).collect(),
        ..Default::default()
    };
    for a in parts.iter().skip(1).flatten() {
        for b in parts.iter().skip(1).flatten() {
            if a.size() + b.size() <= max_degree {
                data.product
                    .push((position(a), position(b), position(&a.merge(b)), Rat::one()));
            }
        }
    }
    for c in parts.iter().skip(1).flatten() {
        for ((l, r), x) in SymFunc::h(c.clone()).coproduct().terms() {
            data.coproduct.push((position(l), position(r), position(c), x.clone()));
        }
    }
    HopfPresentation::new(data).expect("well-formed by construction")
}

/// Sym in the h basis, truncated above `max_degree`, with `χ(h_λ) = 1`.
pub fn truncated_sym(max_degree: usize) -> HopfPresentation {
    h_presentation(PartitionFilter::default(), max_degree)
}

/// `Z[h_1, …, h_k]` in the h basis with the restricted character.
pub fn lambda_k(k: usize, max_degree: usize) -> HopfPresentation {
    h_presentation(PartitionFilter::bounded(k), max_degree)
}

fn binomial_coefficient(n: usize, j: usize) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn binomial_data(max_degree: usize) -> PresentationData {
    let label = |n: usize| match n {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{n}"),
    };
    let mut data = PresentationData {
        max_degree,
        labels: (0..=max_degree).map(|n| vec![label(n)]).collect(),
        character: vec![vec![Rat::one()]; max_degree + 1],
        ..Default::default()
    };
    for a in 1..=max_degree {
        for b in 1..=max_degree - a {
            data.product.push(((a, 0), (b, 0), (a + b, 0), Rat::one()));
        }
    }
    for n in 1..=max_degree {
        for j in 0..=n {
            data.coproduct.push((
                (j, 0),
                (n - j, 0),
                (n, 0),
                Rat::from_integer(binomial_coefficient(n, j)),
            ));
        }
    }
    data
}

/// The polynomial ring in one primitive generator `x` of degree 1, with
/// `Δ(x^n) = Σ_j C(n, j) x^j ⊗ x^{n-j}` and `χ(x^n) = 1`.
pub fn binomial(max_degree: usize) -> HopfPresentation {
    HopfPresentation::new(binomial_data(max_degree)).expect("well-formed by construction")
}

/// The binomial algebra with the coefficient of `x^2 ⊗ x` in `Δ(x^3)` moved
/// from 3 to 4, which breaks coassociativity. Needs `max_degree ≥ 3`.
pub fn corrupted_coproduct(max_degree: usize) -> HopfPresentation {
    assert!(max_degree >= 3, "corruption lives in degree 3");
    let mut data = binomial_data(max_degree);
    for row in &mut data.coproduct {
        if row.0 == (2, 0) && row.1 == (1, 0) && row.2 == (3, 0) {
            row.3 = Rat::from_integer(BigInt::from(4));
        }
    }
    HopfPresentation::new(data).expect("well-formed by construction")
}

/// The binomial algebra with `χ(x) = 2`, so `χ` is no longer multiplicative.
pub fn corrupted_character(max_degree: usize) -> HopfPresentation {
    let mut data = binomial_data(max_degree);
    data.character[1][0] = Rat::from_integer(BigInt::from(2));
    HopfPresentation::new(data).expect("well-formed by construction")
}

/// The element of an h-basis presentation matching `f`.
pub fn element_from_sym(hp: &HopfPresentation, f: &SymFunc) -> Result<Element, HopfError> {
    f.h_terms()
        .iter()
        .map(|(lambda, c)| Ok((hp.index_of(&h_label(lambda))?, c.clone())))
        .collect::<Result<Vec<_>, _>>()
        .map(Element::from_terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sym = truncated_sym(4);
        let dims: Vec<usize> = sym.labels().iter().map(Vec::len).collect();
        assert_eq!(dims, [1, 1, 2, 3, 5]);
        let l2 = lambda_k(2, 4);
        let dims: Vec<usize> = l2.labels().iter().map(Vec::len).collect();
        assert_eq!(dims, [1, 1, 2, 2, 3]);
        assert_eq!(binomial(3).labels()[3], ["x^3"]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_coefficient(6, 3), BigInt::from(20));
        assert_eq!(binomial_coefficient(5, 0), BigInt::one());
    }
}
