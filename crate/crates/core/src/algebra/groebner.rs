//! Buchberger's algorithm with reduced, monic output.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{Monomial, MultiPoly, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x > y > t`.
    #[default]
    GrevLex,
    /// Pure lexicographic with `x > y > t`.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.cmp(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }

    pub fn leading_term(self, p: &MultiPoly) -> Option<(Monomial, Rational)> {
        match self {
            MonomialOrder::GrevLex => p.leading_term().map(|(m, c)| (*m, c.clone())),
            MonomialOrder::Lex => p.terms().max_by(|a, b| a.0.cmp_lex(b.0)).map(|(m, c)| (*m, c.clone())),
        }
    }
}

/// Full reduction of `f` modulo `g` (remainder of multivariate division).
pub fn normal_form(f: &MultiPoly, g: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let leads: Vec<(Monomial, Rational)> = g
        .iter()
        .map(|p| order.leading_term(p).expect("nonzero divisor"))
        .collect();
    let mut rem = f.clone();
    let mut out = MultiPoly::zero();
    while let Some((m, c)) = order.leading_term(&rem) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(i) => {
                let (lm, lc) = &leads[i];
                let q = m.div(lm).expect("divides");
                rem = &rem - &g[i].mul_monomial(&q, &(&c / lc));
            }
            None => {
                out.add_term(m, c.clone());
                rem.add_term(m, -c);
            }
        }
    }
    out
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let (mf, cf) = order.leading_term(f).expect("nonzero");
    let (mg, cg) = order.leading_term(g).expect("nonzero");
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&l.div(&mf).expect("lcm"), &cf.recip());
    let b = g.mul_monomial(&l.div(&mg).expect("lcm"), &cg.recip());
    &a - &b
}

/// Reduced Groebner basis of the ideal generated by `gens`, each element
/// monic, sorted by leading monomial (ascending). The zero ideal gives an
/// empty basis.
pub fn groebner_basis(gens: &[MultiPoly], order: MonomialOrder) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let r = normal_form(g, &basis, order);
        if !r.is_zero() {
            basis.push(monic(&r, order));
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let li = order.leading_term(&basis[i]).expect("nonzero").0;
        let lj = order.leading_term(&basis[j]).expect("nonzero").0;
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && order.leading_term(&basis[k]).expect("nonzero").0.divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        basis.push(monic(&r, order));
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.push_back((k, n));
        }
    }
    reduce(basis, order)
}

fn monic(p: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let (_, c) = order.leading_term(p).expect("nonzero");
    p.scale(&c.recip())
}

fn reduce(basis: Vec<MultiPoly>, order: MonomialOrder) -> Vec<MultiPoly> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|p| order.leading_term(p).expect("nonzero").0)
        .collect();
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && lj.divides(&leads[i]) && (leads[i] != *lj || j < i));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (lm, lc) = order.leading_term(&minimal[i]).expect("nonzero");
        let tail = {
            let mut t = minimal[i].clone();
            t.add_term(lm, -lc.clone());
            t
        };
        let mut r = normal_form(&tail, &others, order);
        r.add_term(lm, lc);
        out.push(monic(&r, order));
    }
    out.sort_by(|a, b| {
        let la = order.leading_term(a).expect("nonzero").0;
        let lb = order.leading_term(b).expect("nonzero").0;
        order.cmp(&la, &lb)
    });
    out
}
