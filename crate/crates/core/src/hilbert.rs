//! Combinatorics of monomial ideals and monomial submodules: Krull dimension
//! from independent sets, standard monomial counts, and Hilbert series
//! numerators used for module lengths.

use std::collections::HashSet;

use crate::length::Length;
use crate::monomial::Monomial;

fn support_mask(m: &Monomial, nvars: usize) -> u32 {
    (0..nvars).filter(|&v| m.exponent(v) > 0).fold(0, |acc, v| acc | (1 << v))
}

/// Drops generators divisible by another generator.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Krull dimension of `k[x_1..x_r]/(gens)`, or `-1` for the unit ideal.
///
/// The dimension is the size of a largest set of variables containing the
/// support of no generator.
pub fn dimension(nvars: usize, gens: &[Monomial]) -> i64 {
    if gens.iter().any(Monomial::is_one) {
        return -1;
    }
    let masks: Vec<u32> = minimalize(gens).iter().map(|m| support_mask(m, nvars)).collect();
    let mut best = 0i64;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as i64;
        if size > best && masks.iter().all(|&g| g & !set != 0) {
            best = size;
        }
    }
    best
}

/// Number of monomials outside the ideal, or [`Length::Infinite`].
pub fn standard_monomial_count(nvars: usize, gens: &[Monomial]) -> Length {
    if dimension(nvars, gens) > 0 {
        return Length::Infinite;
    }
    let gens = minimalize(gens);
    let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier = vec![Monomial::one()];
    while let Some(m) = frontier.pop() {
        if in_ideal(&m) || !seen.insert(m) {
            continue;
        }
        for v in 0..nvars {
            frontier.push(m.mul(&Monomial::var(v)));
        }
    }
    Length::Finite(seen.len() as u64)
}

/// Integer polynomial in `t`, coefficient of `t^k` at index `k`.
pub type SeriesPoly = Vec<i64>;

fn trim(mut p: SeriesPoly) -> SeriesPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut SeriesPoly, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + shift] += sign * c;
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^r` of `k[x]/(gens)`.
pub fn hilbert_numerator(nvars: usize, gens: &[Monomial]) -> SeriesPoly {
    numerator_rec(nvars, minimalize(gens))
}

fn numerator_rec(nvars: usize, gens: Vec<Monomial>) -> SeriesPoly {
    if gens.is_empty() {
        return vec![1];
    }
    // base case: pairwise coprime generators give a complete intersection
    let coprime = gens.iter().enumerate().all(|(a, g)| gens[a + 1..].iter().all(|h| g.is_coprime(h)));
    if coprime {
        let mut acc: SeriesPoly = vec![1];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = acc.clone();
            add_shifted(&mut next, &acc, d, -1);
            acc = next;
        }
        return trim(acc);
    }
    // pivot on the variable shared by the most non-coprime generators
    let mut counts = vec![0usize; nvars];
    for g in gens.iter().filter(|g| g.support_size() > 1) {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exponent(v) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nonempty ring");
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exponent(v)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = Monomial::one();
    pivot.set_exponent(v, e as u16);

    // N(I) = N(I + (p)) + t^e N(I : p)
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| pivot.gcd(g).quotient_of(g)).collect();
    let mut out = numerator_rec(nvars, minimalize(&with_pivot));
    add_shifted(&mut out, &numerator_rec(nvars, minimalize(&colon)), e as usize, 1);
    trim(out)
}

/// Divides by `(1 - t)` as often as possible; returns the quotient and the
/// number of divisions.
pub fn divide_out_one_minus_t(p: &[i64], max: usize) -> (SeriesPoly, usize) {
    let mut cur = trim(p.to_vec());
    let mut count = 0;
    while count < max && !cur.is_empty() && cur.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q_k = sum_{j<=k} p_j
        let mut q = Vec::with_capacity(cur.len() - 1);
        let mut run = 0;
        for &c in &cur[..cur.len() - 1] {
            run += c;
            q.push(run);
        }
        cur = trim(q);
        count += 1;
    }
    (cur, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(2, &[m(&[1, 0]), m(&[0, 1])]), 0);
        assert_eq!(dimension(2, &[m(&[1, 0])]), 1);
        assert_eq!(dimension(2, &[]), 2);
        assert_eq!(dimension(2, &[m(&[0, 0])]), -1);
        assert_eq!(dimension(3, &[m(&[1, 1, 0])]), 2);
    }

    #[test]
    fn standard_monomials() {
        assert_eq!(standard_monomial_count(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])]), Length::Finite(4));
        assert_eq!(standard_monomial_count(2, &[m(&[1, 0])]), Length::Infinite);
    }

    #[test]
    fn numerator_and_length_agree() {
        let gens = [m(&[2, 0]), m(&[1, 1]), m(&[0, 3])];
        let n = hilbert_numerator(2, &gens);
        let (q, k) = divide_out_one_minus_t(&n, 2);
        assert_eq!(k, 2);
        assert_eq!(q.iter().sum::<i64>(), 4);
        // k[x,y]/(x): 1/(1-t)
        let n = hilbert_numerator(2, &[m(&[1, 0])]);
        assert_eq!(n, vec![1, -1]);
        assert_eq!(divide_out_one_minus_t(&n, 2).1, 1);
    }
}
