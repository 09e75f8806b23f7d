//! Dense polynomials over `F_p` (coefficients low degree first, no trailing zeros)
//! and the linear algebra the table algorithm needs.

use alloc::vec;
use alloc::vec::Vec;

use super::scalar::ScalarContext;

pub(crate) type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn deg(f: &Poly) -> isize {
    f.len() as isize - 1
}

fn sub(k: &ScalarContext, f: &Poly, g: &Poly) -> Poly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| k.sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect(),
    )
}

fn mul(k: &ScalarContext, f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(out)
}

fn divrem(k: &ScalarContext, f: &Poly, g: &Poly) -> (Poly, Poly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = f.clone();
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let lead_inv = k.inv(*g.last().unwrap());
    let mut q = vec![0; r.len() - g.len() + 1];
    for i in (0..q.len()).rev() {
        let c = k.mul(r[i + g.len() - 1], lead_inv);
        q[i] = c;
        if c != 0 {
            for (j, &b) in g.iter().enumerate() {
                r[i + j] = k.sub(r[i + j], k.mul(c, b));
            }
        }
    }
    (trim(q), trim(r))
}

fn monic(k: &ScalarContext, f: Poly) -> Poly {
    match f.last() {
        None => f,
        Some(&l) => {
            let li = k.inv(l);
            f.into_iter().map(|c| k.mul(c, li)).collect()
        }
    }
}

fn gcd(k: &ScalarContext, f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = divrem(k, &a, &b).1;
        a = b;
        b = r;
    }
    monic(k, a)
}

fn powmod(k: &ScalarContext, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = divrem(k, &vec![1], m).1;
    let mut b = divrem(k, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(k, &mul(k, &acc, &b), m).1;
        }
        b = divrem(k, &mul(k, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Distinct roots in `F_p` of a non-zero polynomial, sorted.
pub(crate) fn distinct_roots(k: &ScalarContext, f: &Poly) -> Vec<u64> {
    let f = monic(k, trim(f.clone()));
    if deg(&f) < 1 {
        return Vec::new();
    }
    // g = gcd(f, x^p - x) is the product of (x - r) over the distinct roots r.
    let xp = powmod(k, &vec![0, 1], k.p(), &f);
    let g = gcd(k, &f, &sub(k, &xp, &vec![0, 1]));
    let mut roots = Vec::new();
    split(k, &g, &mut roots);
    roots.sort_unstable();
    roots
}

/// Equal-degree splitting of a squarefree product of linear factors.
fn split(k: &ScalarContext, g: &Poly, out: &mut Vec<u64>) {
    match deg(g) {
        d if d < 1 => {}
        1 => out.push(k.neg(k.mul(g[0], k.inv(g[1])))),
        _ => {
            for a in 0..k.p() {
                let h = powmod(k, &vec![a, 1], (k.p() - 1) / 2, g);
                let h = gcd(k, g, &sub(k, &h, &vec![1]));
                if deg(&h) > 0 && deg(&h) < deg(g) {
                    let rest = divrem(k, g, &h).0;
                    split(k, &h, out);
                    split(k, &rest, out);
                    return;
                }
            }
            unreachable!("splitting failed for every shift");
        }
    }
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub(crate) fn charpoly(k: &ScalarContext, a: &[Vec<u64>]) -> Poly {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(i) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if i != c + 1 {
            h.swap(i, c + 1);
            for row in h.iter_mut() {
                row.swap(i, c + 1);
            }
        }
        let inv = k.inv(h[c + 1][c]);
        for r in c + 2..n {
            let u = k.mul(h[r][c], inv);
            if u == 0 {
                continue;
            }
            for t in 0..n {
                let v = k.mul(u, h[c + 1][t]);
                h[r][t] = k.sub(h[r][t], v);
            }
            for row in h.iter_mut() {
                let v = k.mul(u, row[r]);
                row[c + 1] = k.add(row[c + 1], v);
            }
        }
    }
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let mut next = mul(k, &vec![k.neg(h[m][m]), 1], &polys[m]);
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = k.mul(prod, h[i + 1][i]);
            let t = k.mul(h[i][m], prod);
            if t != 0 {
                let scaled: Poly = polys[i].iter().map(|&c| k.mul(c, t)).collect();
                next = sub(k, &next, &scaled);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(k: &ScalarContext, m: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(i, r);
        let inv = k.inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = k.mul(*v, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for t in 0..cols {
                    let v = k.mul(f, m[r][t]);
                    m[i][t] = k.sub(m[i][t], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space of a square matrix.
pub(crate) fn nullspace(k: &ScalarContext, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref(k, &mut m);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(m[r][free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::new(1, 10).unwrap()
    }

    #[test]
    fn roots_of_a_product_of_linears() {
        let k = ctx();
        // (x - 1)^2 (x - 5)(x + 3)
        let mut f = vec![1];
        for r in [1, 1, 5, k.neg(3)] {
            f = mul(&k, &f, &vec![k.neg(r), 1]);
        }
        let mut expect = vec![1, 5, k.neg(3)];
        expect.sort_unstable();
        assert_eq!(distinct_roots(&k, &f), expect);
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        let k = ctx();
        let a = vec![vec![2, 1, 0], vec![0, 3, 4], vec![5, 0, 1]];
        // det(xI - A) = x^3 - 6x^2 + 11x - 26 (cofactor expansion by hand).
        let want = vec![k.neg(26), 11, k.neg(6), 1];
        assert_eq!(charpoly(&k, &a), want);
    }

    #[test]
    fn nullspace_dimension() {
        let k = ctx();
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&k, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(0, |acc, (&x, &y)| k.add(acc, k.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}
