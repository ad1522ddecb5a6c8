use super::complex::{validate_complex, PerfectComplex};
use crate::error::{Error, Result};
use crate::grouprings::{DetClass, Integers, Rationals};
use crate::linalg::{equivariant_solve, subsets, IntGrMatrix, RatGrMatrix, SolveChoice};

/// A quasi-isomorphic complex `0 -> F_2 -> F_1 -> F_0 -> 0`.
///
/// Shorter complexes are padded with zero terms. Longer ones lose their top
/// term while `d_k` maps `F_k` isomorphically onto a free direct summand of
/// `F_{k-1}`: a set `S` of rows of `d_k` whose square block has determinant
/// in `Z_l[G]^*` certifies that the coordinates outside `S` span a free
/// complement, and `d_{k-1}` restricted to them is the new top differential.
pub fn truncate(c: &PerfectComplex) -> Result<PerfectComplex> {
    let g = c.group().clone();
    let l = c.prime();
    let mut ranks = c.ranks().to_vec();
    let mut diffs = c.differentials().to_vec();
    while ranks.len() < 3 {
        let top = *ranks.last().expect("nonempty");
        diffs.push(IntGrMatrix::zeros(&g, &Integers, top, 0));
        ranks.push(0);
    }
    while ranks.len() > 3 {
        let dk = diffs.pop().expect("k >= 3");
        let rk = ranks.pop().expect("k >= 3");
        let below = ranks.len() - 1;
        let rows = ranks[below];
        let cols: Vec<usize> = (0..rk).collect();
        let mut found = None;
        for s in subsets(rows, rk) {
            let det = dk.submatrix(&s, &cols).det().to_rational();
            if det.is_invertible() && det.is_integral_unit(l)? {
                found = Some(s);
                break;
            }
        }
        let Some(s) = found else {
            return Err(Error::NotFree(format!(
                "no {rk}x{rk} block of d_{} is a unit of Z_{l}[G]",
                ranks.len()
            )));
        };
        let keep: Vec<usize> = (0..rows).filter(|i| !s.contains(i)).collect();
        let d_prev = diffs.pop().expect("k >= 3");
        let all_rows: Vec<usize> = (0..d_prev.rows()).collect();
        diffs.push(d_prev.submatrix(&all_rows, &keep));
        ranks[below] = keep.len();
    }
    PerfectComplex::new(l, g, ranks, diffs)
}

/// The dual of a three-term complex, reindexed as a chain complex:
/// `F'_i = Hom(F_{2-i}, Z_l[G])` with `d'_2 = tau(d_1^T)`, `d'_1 = tau(d_2^T)`.
pub fn dualize(c: &PerfectComplex) -> Result<PerfectComplex> {
    if c.length() != 2 {
        return Err(Error::BadSize("dualize expects a three-term complex".into()));
    }
    let r = c.ranks();
    PerfectComplex::new(
        c.prime(),
        c.group().clone(),
        vec![r[2], r[1], r[0]],
        vec![c.d(2).tau_transpose(), c.d(1).tau_transpose()],
    )
}

/// The matrix `Y = [eta | d_2] : F_0 + F_2 -> F_1` over `Q[G]`, where
/// `d_1 eta = 1`, for a three-term complex.
pub fn splitting_matrix(c: &PerfectComplex, choice: SolveChoice<'_>) -> Result<RatGrMatrix> {
    let g = c.group();
    let d1 = c.d(1).to_rational();
    let id = RatGrMatrix::identity(g, &Rationals, c.ranks()[0]);
    let eta = equivariant_solve(&d1, &id, choice).ok_or(Error::SplitFailure)?;
    let y = eta.hstack(&c.d(2).to_rational());
    if y.rows() != y.cols() {
        return Err(Error::SplitFailure);
    }
    Ok(y)
}

/// `det(X)` of a complex with finite homology in degrees 0 and 1, as
/// `det(Y)` of its truncation. A two-term complex `d` gives `det(d)^{-1}`.
pub fn det_class(c: &PerfectComplex) -> Result<DetClass> {
    det_class_with(c, SolveChoice::Canonical)
}

/// [`det_class`] with a choice of splitting.
pub fn det_class_with(c: &PerfectComplex, choice: SolveChoice<'_>) -> Result<DetClass> {
    validate_complex(c, true)?;
    let t = truncate(c)?;
    let y = splitting_matrix(&t, choice)?;
    DetClass::new(y.det(), c.prime()).map_err(|_| Error::SplitFailure)
}
