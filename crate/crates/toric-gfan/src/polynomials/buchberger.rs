//! Buchberger's algorithm with the product criterion, plus multivariate
//! division. Non-global orders are accepted; callers must then feed
//! homogeneous input, which keeps division terminating degree slice by
//! degree slice.

use super::{Monomial, Order, Polynomial};

/// Remainder of `f` on division by `basis` w.r.t. `order`. All terms of
/// the remainder are free of the basis leading terms.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &Order) -> Polynomial {
    let field = f.field;
    let mut p = f.clone();
    let mut r = Polynomial::zero(field, f.num_vars);
    let leads: Vec<(Monomial, _)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading(order).unwrap();
            (m.clone(), (g, c.clone()))
        })
        .collect();
    while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = p.leading(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (gm, (g, gc)) in &leads {
            if let Some(q) = lm.div(gm) {
                let factor = field.div(&lc, gc);
                p = p.sub(&g.mul_term(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            r.add_term(lm.clone(), lc.clone());
            let mut t = Polynomial::zero(field, f.num_vars);
            t.add_term(lm, lc);
            p = p.sub(&t);
        }
    }
    r
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &Order) -> Polynomial {
    let field = f.field;
    let (fm, fc) = f.leading(order).unwrap();
    let (gm, gc) = g.leading(order).unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), &field.inv(fc));
    let b = g.mul_term(&l.div(gm).unwrap(), &field.inv(gc));
    a.sub(&b)
}

/// The unique reduced Groebner basis of the ideal generated by `gens`,
/// sorted by descending leading monomial.
pub fn buchberger(gens: &[Polynomial], order: &Order) -> Vec<Polynomial> {
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let mut basis = nonzero;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fm, _) = basis[i].leading(order).unwrap();
        let (gm, _) = basis[j].leading(order).unwrap();
        if fm.coprime(gm) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            for t in 0..k {
                pairs.push((t, k));
            }
            basis.push(r);
        }
    }
    reduce_basis(basis, order)
}

/// Minimalizes and autoreduces a Groebner basis; output is monic and
/// sorted descending by leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>, order: &Order) -> Vec<Polynomial> {
    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading(order).unwrap();
        let mi = mi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading(order).unwrap();
            if mj.divides(&mi) && (mj != &mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // autoreduce tails until stable
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
                .collect();
            let r = normal_form(&basis[i], &others, order);
            assert!(!r.is_zero(), "minimal basis element reduced to zero");
            if r != basis[i] {
                basis[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for g in &mut basis {
        *g = g.monic(order);
    }
    basis.sort_by(|a, b| {
        let (ma, _) = a.leading(order).unwrap();
        let (mb, _) = b.leading(order).unwrap();
        order.cmp(mb, ma)
    });
    basis
}
