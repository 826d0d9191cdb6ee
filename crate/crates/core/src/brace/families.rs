//! Brace constructors: trivial braces on abelian groups, the cyclic
//! one-parameter family on `Z/pⁿ`, and direct/semidirect products.

use crate::brace::enumerate::AbelianGroup;
use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::perm::cayley::is_prime;

/// The trivial brace `a ∘ b = a + b` on the abelian group with the given
/// factor list (e.g. `[6]` or `[2, 2]`).
pub fn trivial_brace(factors: &[usize]) -> Result<Brace> {
    let a = AbelianGroup::new(factors)?;
    let add = a.add_table();
    Ok(Brace::from_tables_unchecked(add.clone(), add))
}

/// The brace on `Z/pⁿ` with `a ∘ b = a + b + pᵗ·a·b`. Requires `p` prime
/// and `1 ≤ t ≤ n`; for `t = n` this is the trivial brace.
pub fn cyclic_brace(p: usize, n: usize, t: usize) -> Result<Brace> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{} is not prime", p)));
    }
    if t < 1 || t > n || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= n, got t = {}, n = {}",
            t, n
        )));
    }
    let m = p
        .checked_pow(n as u32)
        .filter(|&m| m <= 1 << 16)
        .ok_or_else(|| Error::InvalidParameter("p^n too large".to_string()))?;
    let pt = p.pow(t as u32);
    let add: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect();
    let mul: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| (a + b + pt * a * b) % m).collect())
        .collect();
    Brace::new(add, mul)
}

/// A homomorphism from `(T, ∘)` into the brace automorphisms of `S`,
/// given as one image table of `S` per element of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionHom {
    maps: Vec<Vec<usize>>,
}

impl ActionHom {
    /// Verifies that every map is an automorphism of both operations of
    /// `s` and that `t ↦ map_t` is a homomorphism from `(t, ∘)`.
    pub fn new(s: &Brace, t: &Brace, maps: Vec<Vec<usize>>) -> Result<ActionHom> {
        if maps.len() != t.order() {
            return Err(Error::InvalidParameter(format!(
                "expected {} maps, got {}",
                t.order(),
                maps.len()
            )));
        }
        let m = s.order();
        for (x, map) in maps.iter().enumerate() {
            if map.len() != m {
                return Err(Error::InvalidParameter(format!(
                    "map {} has wrong length",
                    x
                )));
            }
            let mut seen = vec![false; m];
            for &v in map {
                if v >= m || seen[v] {
                    return Err(Error::InvalidParameter(format!(
                        "map {} is not a bijection",
                        x
                    )));
                }
                seen[v] = true;
            }
            for a in 0..m {
                for b in 0..m {
                    if map[s.add(a, b)] != s.add(map[a], map[b])
                        || map[s.mul(a, b)] != s.mul(map[a], map[b])
                    {
                        return Err(Error::InvalidParameter(format!(
                            "map {} is not a brace automorphism",
                            x
                        )));
                    }
                }
            }
        }
        if maps[0] != (0..m).collect::<Vec<usize>>() {
            return Err(Error::InvalidParameter(
                "the identity of the acting brace must act trivially".to_string(),
            ));
        }
        for x in 0..t.order() {
            for y in 0..t.order() {
                let xy = t.mul(x, y);
                for a in 0..m {
                    if maps[xy][a] != maps[x][maps[y][a]] {
                        return Err(Error::InvalidParameter(format!(
                            "action is not a homomorphism at ({}, {})",
                            x, y
                        )));
                    }
                }
            }
        }
        Ok(ActionHom { maps })
    }

    /// The trivial action.
    pub fn trivial(s: &Brace, t: &Brace) -> ActionHom {
        let id: Vec<usize> = (0..s.order()).collect();
        ActionHom {
            maps: vec![id; t.order()],
        }
    }

    /// `x` acts by the additive scalar `r^(x mod q)`; requires scalar
    /// multiplication by `r` to be a brace automorphism of `s` and
    /// `x ↦ x mod q` to be a ∘-homomorphism of `t` (both verified).
    pub fn by_scalar(s: &Brace, t: &Brace, r: usize, q: usize) -> Result<ActionHom> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be positive".to_string()));
        }
        let m = s.order();
        let scalar = |x: usize, r_pow: usize| -> usize { s.add_multiple(x, r_pow) };
        let mut powers: Vec<usize> = Vec::new(); // r^k mod additive exponent, as scalars
        let mut rk = 1usize;
        for _ in 0..q {
            powers.push(rk);
            rk = rk * r % lcm_exponent(s);
        }
        let maps = (0..t.order())
            .map(|x| {
                let k = x % q;
                (0..m).map(|b| scalar(b, powers[k])).collect()
            })
            .collect();
        ActionHom::new(s, t, maps)
    }

    /// `x` of odd residue acts by additive inversion.
    pub fn inversion(s: &Brace, t: &Brace) -> Result<ActionHom> {
        let maps = (0..t.order())
            .map(|x| {
                if x % 2 == 1 {
                    (0..s.order()).map(|b| s.neg(b)).collect()
                } else {
                    (0..s.order()).collect()
                }
            })
            .collect();
        ActionHom::new(s, t, maps)
    }

    pub fn map(&self, x: usize) -> &[usize] {
        &self.maps[x]
    }
}

fn lcm_exponent(s: &Brace) -> usize {
    s.additive_exponent().max(1)
}

/// The semidirect product of the trivial brace on `Z/p` by the cyclic
/// brace `C(q, n, t)`, with `x` acting by the scalar `r^(x mod q)` for the
/// least non-trivial `r` with `r^q ≡ 1 (mod p)`. For `q | p − 1` and odd
/// `q`, the multiplicative group is the metacyclic minimal non-cyclic
/// group of order `p·qⁿ`.
pub fn mnc_brace(p: usize, q: usize, n: usize, t: usize) -> Result<Brace> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::InvalidParameter(format!(
            "need distinct primes, got p = {}, q = {}",
            p, q
        )));
    }
    let r = (2..p)
        .find(|&r| {
            let mut acc = 1usize;
            for _ in 0..q {
                acc = acc * r % p;
            }
            acc == 1
        })
        .ok_or_else(|| {
            Error::InvalidParameter(format!("{} does not divide {} - 1", q, p))
        })?;
    let ap = trivial_brace(&[p])?;
    let aq = cyclic_brace(q, n, t)?;
    let alpha = ActionHom::by_scalar(&ap, &aq, r, q)?;
    semidirect_product(&ap, &aq, &alpha)
}

/// Componentwise product of two braces; pairs indexed `a₁·|b2| + a₂`.
pub fn direct_product(b1: &Brace, b2: &Brace) -> Brace {
    let (m1, m2) = (b1.order(), b2.order());
    let m = m1 * m2;
    let idx = |a1: usize, a2: usize| a1 * m2 + a2;
    let mut add = vec![vec![0usize; m]; m];
    let mut mul = vec![vec![0usize; m]; m];
    for a1 in 0..m1 {
        for a2 in 0..m2 {
            for c1 in 0..m1 {
                for c2 in 0..m2 {
                    add[idx(a1, a2)][idx(c1, c2)] = idx(b1.add(a1, c1), b2.add(a2, c2));
                    mul[idx(a1, a2)][idx(c1, c2)] = idx(b1.mul(a1, c1), b2.mul(a2, c2));
                }
            }
        }
    }
    Brace::from_tables_unchecked(add, mul)
}

/// The semidirect product `S ⋊_α T`: addition is componentwise and
/// `(a₁, a₂) ∘ (b₁, b₂) = (a₁ ∘ α_{a₂}(b₁), a₂ ∘ b₂)`.
pub fn semidirect_product(s: &Brace, t: &Brace, alpha: &ActionHom) -> Result<Brace> {
    let (m1, m2) = (s.order(), t.order());
    let m = m1 * m2;
    let idx = |a1: usize, a2: usize| a1 * m2 + a2;
    let mut add = vec![vec![0usize; m]; m];
    let mut mul = vec![vec![0usize; m]; m];
    for a1 in 0..m1 {
        for a2 in 0..m2 {
            for b1 in 0..m1 {
                for b2 in 0..m2 {
                    add[idx(a1, a2)][idx(b1, b2)] = idx(s.add(a1, b1), t.add(a2, b2));
                    mul[idx(a1, a2)][idx(b1, b2)] =
                        idx(s.mul(a1, alpha.map(a2)[b1]), t.mul(a2, b2));
                }
            }
        }
    }
    Brace::new(add, mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::brace_isomorphic;
    use crate::perm::MillerMoreno;

    #[test]
    fn dihedral_order_six_brace() {
        let b3 = trivial_brace(&[3]).unwrap();
        let b2 = trivial_brace(&[2]).unwrap();
        let alpha = ActionHom::inversion(&b3, &b2).unwrap();
        let b = semidirect_product(&b3, &b2, &alpha).unwrap();
        assert_eq!(b.order(), 6);
        let mult = b.multiplicative_table();
        assert!(mult.is_dihedral());
        assert_eq!(b.additive_invariants(), vec![6]);
    }

    #[test]
    fn order_21_semidirect_is_metacyclic() {
        let b7 = trivial_brace(&[7]).unwrap();
        let b3 = trivial_brace(&[3]).unwrap();
        // 2³ ≡ 1 (mod 7).
        let alpha = ActionHom::by_scalar(&b7, &b3, 2, 3).unwrap();
        let b = semidirect_product(&b7, &b3, &alpha).unwrap();
        assert_eq!(b.order(), 21);
        assert_eq!(
            b.multiplicative_table().minimal_non_cyclic(),
            Some(MillerMoreno::Metacyclic { p: 7, q: 3, n: 1 })
        );
    }

    #[test]
    fn direct_product_of_trivials_is_trivial() {
        let b2 = trivial_brace(&[2]).unwrap();
        let b3 = trivial_brace(&[3]).unwrap();
        let prod = direct_product(&b2, &b3);
        assert!(prod.is_trivial());
        let z6 = trivial_brace(&[6]).unwrap();
        assert!(brace_isomorphic(&prod, &z6).is_some());
    }

    #[test]
    fn semidirect_with_trivial_action_equals_direct() {
        let b5 = trivial_brace(&[5]).unwrap();
        let b4 = cyclic_brace(2, 2, 1).unwrap();
        let alpha = ActionHom::trivial(&b5, &b4);
        let sd = semidirect_product(&b5, &b4, &alpha).unwrap();
        let dp = direct_product(&b5, &b4);
        assert_eq!(sd.add_rows(), dp.add_rows());
        assert_eq!(sd.mul_rows(), dp.mul_rows());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(cyclic_brace(4, 2, 1).is_err());
        assert!(cyclic_brace(3, 2, 0).is_err());
        assert!(cyclic_brace(3, 2, 3).is_err());
    }

    #[test]
    fn non_homomorphic_action_is_rejected() {
        let b3 = trivial_brace(&[3]).unwrap();
        let b4 = trivial_brace(&[4]).unwrap();
        // x ↦ inversion^x is not a ∘-homomorphism mod 4... it is mod 2.
        // Build a genuinely broken action: only x = 1 inverts.
        let id: Vec<usize> = (0..3).collect();
        let inv: Vec<usize> = vec![0, 2, 1];
        let maps = vec![id.clone(), inv, id.clone(), id];
        assert!(ActionHom::new(&b3, &b4, maps).is_err());
    }
}
