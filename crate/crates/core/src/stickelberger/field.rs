use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{gcd, mul_mod};
use crate::error::{Error, Result};
use crate::grouprings::FiniteAbelianGroup;
use crate::linalg::{smith_normal_form, IntegerMatrix};

/// The subfield of `Q(xi_f)` fixed by a subgroup `H` of `(Z/f)^*`, with its
/// Galois group `(Z/f)^*/H` in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianFieldSpec {
    conductor: u64,
    subgroup: Vec<u64>,
    group: FiniteAbelianGroup,
    /// Group index of `sigma_a` for each residue `a`; `None` off the units.
    index: Vec<Option<usize>>,
    /// Smallest residue in each coset.
    reps: Vec<u64>,
}

fn units(f: u64) -> Vec<u64> {
    if f == 1 {
        return vec![0];
    }
    (1..f).filter(|&a| gcd(a, f) == 1).collect()
}

impl AbelianFieldSpec {
    /// `H` is the subgroup generated by `h_gens`.
    pub fn new(f: u64, h_gens: &[u64]) -> Result<Self> {
        if f == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let mut subgroup = vec![1 % f];
        for &h in h_gens {
            let h = h % f;
            if gcd(h, f) != 1 && f > 1 {
                return Err(Error::BadResidue { a: h as i64, f });
            }
            // Close under multiplication by h.
            let mut frontier = subgroup.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for x in frontier {
                    let y = mul_mod(x, h, f);
                    if !subgroup.contains(&y) {
                        subgroup.push(y);
                        next.push(y);
                    }
                }
                frontier = next;
            }
        }
        subgroup.sort_unstable();
        Ok(Self::from_subgroup(f, subgroup))
    }

    /// `Q(xi_f)`.
    pub fn cyclotomic(f: u64) -> Self {
        Self::new(f, &[]).expect("trivial subgroup")
    }

    pub fn rationals() -> Self {
        Self::cyclotomic(1)
    }

    /// `Q(xi_f)^+`.
    pub fn real_subfield(f: u64) -> Self {
        Self::new(f, &[f.saturating_sub(1)]).expect("-1 is a unit")
    }

    /// `Q(xi_g)` seen at level `f`: `H` is the kernel of `(Z/f)^* -> (Z/g)^*`.
    pub fn level_quotient(f: u64, g: u64) -> Result<Self> {
        if g == 0 || !f.is_multiple_of(g) {
            return Err(Error::IncompatibleFields(format!("{g} does not divide {f}")));
        }
        let h: Vec<u64> = units(f).into_iter().filter(|a| a % g == 1 % g).collect();
        Ok(Self::from_subgroup(f, h))
    }

    fn from_subgroup(f: u64, subgroup: Vec<u64>) -> Self {
        let us = units(f);
        let key = |a: u64| subgroup.iter().map(|&h| mul_mod(a, h, f)).min().expect("1 in H");
        // Greedy generators of U/H with their relation vectors.
        let mut gens: Vec<u64> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut span: HashMap<u64, Vec<i64>> = HashMap::from([(key(1 % f), Vec::new())]);
        let quotient_order = us.len() / subgroup.len();
        for &a in &us {
            if span.len() == quotient_order {
                break;
            }
            if span.contains_key(&key(a)) {
                continue;
            }
            let j = gens.len();
            let mut c = 1i64;
            let mut power = a;
            while !span.contains_key(&key(power)) {
                power = mul_mod(power, a, f);
                c += 1;
            }
            let mut rel = span[&key(power)].iter().map(|x| -x).collect::<Vec<_>>();
            rel.resize(j, 0);
            rel.push(c);
            relations.push(rel);
            let mut next = HashMap::new();
            for (s, v) in &span {
                let mut x = *s;
                for i in 0..c {
                    let mut w = v.clone();
                    w.resize(j, 0);
                    w.push(i);
                    next.insert(key(x), w);
                    x = mul_mod(x, a, f);
                }
            }
            span = next;
            gens.push(a);
        }
        let k = gens.len();
        let rows: Vec<Vec<BigInt>> = relations
            .into_iter()
            .map(|mut r| {
                r.resize(k, 0);
                r.into_iter().map(BigInt::from).collect()
            })
            .collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows_with_cols(rows, k));
        let diag: Vec<u64> = snf.diagonal.iter().map(|d| d.to_u64().expect("small")).collect();
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
        let group = FiniteAbelianGroup::new(keep.iter().map(|&i| diag[i]).collect()).expect("SNF chain");
        let v = snf.v;
        let mut index = vec![None; f as usize];
        let mut reps = vec![u64::MAX; group.order()];
        for &a in &us {
            let x = &span[&key(a)];
            let y: Vec<i64> = keep
                .iter()
                .map(|&c| {
                    let s: BigInt = (0..k)
                        .map(|r| BigInt::from(x.get(r).copied().unwrap_or(0)) * v.get(r, c))
                        .sum();
                    (s % BigInt::from(diag[c])).to_i64().expect("small")
                })
                .collect();
            let g = group.index_of(&y);
            index[a as usize] = Some(g);
            reps[g] = reps[g].min(a);
        }
        AbelianFieldSpec {
            conductor: f,
            subgroup,
            group,
            index,
            reps,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Elements of `H`, sorted.
    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    /// `G(L/Q)`.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    /// `-1` lies in `H`.
    pub fn is_real(&self) -> bool {
        self.in_subgroup(self.conductor - 1)
    }

    pub fn in_subgroup(&self, a: u64) -> bool {
        self.subgroup.binary_search(&(a % self.conductor)).is_ok()
    }

    /// The residues `a` with `gcd(a, f) = 1`, in increasing order.
    pub fn units(&self) -> Vec<u64> {
        units(self.conductor)
    }

    /// Group index of `sigma_a`.
    pub fn sigma(&self, a: i64) -> Result<usize> {
        let f = self.conductor;
        let r = a.rem_euclid(f as i64) as u64;
        self.index[r as usize].ok_or(Error::BadResidue { a, f })
    }

    /// The smallest residue `a` with `sigma_a = g`.
    pub fn representative(&self, g: usize) -> u64 {
        self.reps[g]
    }

    /// `sigma_a -> sigma_{a mod g}` onto `target`, when the conductor of
    /// `target` divides ours and `H` lands inside the target's subgroup.
    pub fn projection(&self, target: &AbelianFieldSpec) -> Result<Vec<usize>> {
        let (f, g) = (self.conductor, target.conductor);
        if f % g != 0 {
            return Err(Error::IncompatibleFields(format!("conductor {g} does not divide {f}")));
        }
        if !self.subgroup.iter().all(|&h| target.in_subgroup(h % g)) {
            return Err(Error::IncompatibleFields(
                "subgroup does not map into the target subgroup".into(),
            ));
        }
        (0..self.group.order())
            .map(|x| target.sigma((self.reps[x] % g) as i64))
            .collect()
    }
}
