use super::concrete::{ActionMatrix, ConcreteModule};
use crate::linalg::fp::span_rank;

/// Element of `F_l[G]` as a coefficient vector in canonical order.
type Fl = Vec<u64>;

fn fl_mul(m: &ConcreteModule, a: &Fl, b: &Fl) -> Fl {
    let g = m.group();
    let l = m.prime();
    let mut out = vec![0; g.order()];
    for (x, &ca) in a.iter().enumerate().filter(|(_, &c)| c != 0) {
        for (y, &cb) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
            let z = g.op(x, y);
            out[z] = (out[z] + ca * cb) % l;
        }
    }
    out
}

fn fl_pow(m: &ConcreteModule, a: &Fl, mut e: u64) -> Fl {
    let mut acc = vec![0; m.group().order()];
    acc[m.group().identity()] = 1;
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = fl_mul(m, &acc, &base);
        }
        base = fl_mul(m, &base, &base);
        e >>= 1;
    }
    acc
}

/// Primitive idempotents of `F_l[H]`, `H` the prime-to-l part of `G`.
///
/// Every idempotent is fixed by Frobenius `h -> h^l`, so it lies in the span
/// of the Frobenius orbit sums, a split algebra `F_l^k`. Each orbit sum `b`
/// satisfies `b^l = b` and splits an idempotent `e` into the pieces
/// `e (1 - (b - c)^{l-1})`, `c` in `F_l`.
pub fn primitive_idempotents(m: &ConcreteModule) -> Vec<Fl> {
    let g = m.group();
    let l = m.prime();
    let n = g.order();
    let in_h: Vec<bool> = (0..n).map(|x| !g.element_order(x).is_multiple_of(l)).collect();
    let mut seen = vec![false; n];
    let mut orbit_sums = Vec::new();
    for x in (0..n).filter(|&x| in_h[x]) {
        if seen[x] {
            continue;
        }
        let mut s = vec![0u64; n];
        let mut y = x;
        while !seen[y] {
            seen[y] = true;
            s[y] = 1;
            y = g.power(y, l as i64);
        }
        orbit_sums.push(s);
    }
    let one = {
        let mut v = vec![0u64; n];
        v[g.identity()] = 1;
        v
    };
    let mut idems = vec![one.clone()];
    for b in &orbit_sums {
        let mut next = Vec::new();
        for e in &idems {
            for c in 0..l {
                let mut bc = b.clone();
                bc[g.identity()] = (bc[g.identity()] + l - c) % l;
                let p = fl_pow(m, &bc, l - 1);
                let proj: Fl = one.iter().zip(&p).map(|(a, b)| (a + l - b) % l).collect();
                let piece = fl_mul(m, e, &proj);
                if piece.iter().any(|&x| x != 0) {
                    next.push(piece);
                }
            }
        }
        idems = next;
    }
    idems
}

fn action_mod_l(m: &ConcreteModule, acts: &[ActionMatrix], x: &Fl) -> Vec<Vec<u64>> {
    let k = m.num_factors();
    let l = m.prime();
    let mut out = vec![vec![0u64; k]; k];
    for (g, &c) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
        for r in 0..k {
            for j in 0..k {
                out[r][j] = (out[r][j] + c * (acts[g][r][j] % l)) % l;
            }
        }
    }
    out
}

fn columns(mat: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let k = mat.len();
    (0..k).map(|j| (0..k).map(|r| mat[r][j]).collect()).collect()
}

/// The minimal number of generators of `M` over `Z_l[G]`.
///
/// By Nakayama this is the number needed for `V = M / (l M + I_{G_1} M)` over
/// the semisimple algebra `F_l[H] = prod F_{q_i}`, namely the largest
/// `dim(e_i V) / dim(e_i F_l[H])`.
pub fn min_generators(m: &ConcreteModule) -> usize {
    if m.is_zero() {
        return 0;
    }
    let g = m.group();
    let l = m.prime();
    let acts = m.all_actions();
    let ident = m.identity_matrix();
    // W = I_{G_1} M mod l, spanned by the columns of (g - 1) for l-power g.
    let mut w: Vec<Vec<u64>> = Vec::new();
    for (x, a) in acts.iter().enumerate() {
        let o = g.element_order(x);
        if o > 1 && is_power_of(o, l) {
            for j in 0..m.num_factors() {
                w.push(
                    (0..m.num_factors())
                        .map(|r| (a[r][j] + l - ident[r][j] % l) % l)
                        .collect(),
                );
            }
        }
    }
    let w_rank = span_rank(&w, l);
    let mut best = 0;
    for e in primitive_idempotents(m) {
        let mut image = columns(&action_mod_l(m, &acts, &e));
        image.extend(w.iter().cloned());
        let dim_v = span_rank(&image, l) - w_rank;
        let n = g.order();
        let translates: Vec<Vec<u64>> = (0..n)
            .filter(|&h| !g.element_order(h).is_multiple_of(l))
            .map(|h| {
                let mut hv = vec![0u64; n];
                hv[h] = 1;
                fl_mul(m, &e, &hv)
            })
            .collect();
        let dim_a = span_rank(&translates, l);
        best = best.max(dim_v.div_ceil(dim_a));
    }
    best
}

fn is_power_of(mut n: u64, l: u64) -> bool {
    while n.is_multiple_of(l) {
        n /= l;
    }
    n == 1
}

/// True when `x^l = x` in `F_l[G]`.
pub fn is_frobenius_fixed(m: &ConcreteModule, x: &Fl) -> bool {
    fl_pow(m, x, m.prime()) == *x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprings::FiniteAbelianGroup;

    #[test]
    fn examples() {
        let c2 = FiniteAbelianGroup::cyclic(2);
        let cyc = ConcreteModule::cyclic_scalar(2, &c2, 2, &[3]).unwrap();
        assert_eq!(min_generators(&cyc), 1);
        let t = FiniteAbelianGroup::trivial();
        let f = ConcreteModule::trivial_cyclic(3, &t, 1);
        assert_eq!(min_generators(&f.direct_sum(&f).unwrap()), 2);
        assert_eq!(min_generators(&ConcreteModule::zero(3, &t)), 0);
    }

    #[test]
    fn splitting_components() {
        // F_2[C3] = F_2 x F_4; the regular module is cyclic.
        let c3 = FiniteAbelianGroup::cyclic(3);
        let probe = ConcreteModule::zero(2, &c3);
        let idems = primitive_idempotents(&probe);
        assert_eq!(idems.len(), 2);
        for e in &idems {
            assert!(is_frobenius_fixed(&probe, e));
        }
        // F_7 with a generator of C3 acting by 2 and by 4: two distinct
        // eigencharacters, so the sum is cyclic.
        let a = ConcreteModule::cyclic_scalar(7, &c3, 1, &[2]).unwrap();
        let b = ConcreteModule::cyclic_scalar(7, &c3, 1, &[4]).unwrap();
        assert_eq!(min_generators(&a.direct_sum(&b).unwrap()), 1);
        assert_eq!(min_generators(&a.direct_sum(&a).unwrap()), 2);
    }
}
