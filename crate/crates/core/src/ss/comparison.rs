use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::bp::{deg_a, deg_u, e2_ring, t_count};
use crate::algebra::{Degree, DegreeWindow, GeneratorTable, MonomialEnumerator, PolyElement, RingMap};
use crate::error::Result;
use crate::exact::scalar::F2;
use crate::report::Outcome;

/// `F2[a, x1, v1..vn, z1sq, z2, z3, ...]`, with `z_i` in half the degree of `t_i`.
pub fn comparison_target(n: u32, tk: u32) -> GeneratorTable {
    let mut gens = vec![("a".to_string(), deg_a()), ("x1".to_string(), Degree::new(1, -1, 0))];
    for i in 1..=n {
        gens.push((format!("v{i}"), super::bp::deg_v(i)));
    }
    gens.push(("z1sq".to_string(), super::bp::deg_t(1)));
    for i in 2..=tk {
        let k = (1i64 << i) - 1;
        gens.push((format!("z{i}"), Degree::new(k, 0, -k)));
    }
    GeneratorTable::new(gens)
}

/// Rank over F2 of a set of bit vectors.
fn f2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, |r| r.len());
    for bit in 0..words * 64 {
        let (wd, b) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][wd] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[wd] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The map of `E_2` pages into the mod 2 comparison target: degree-preserving, kills `2a`, and
/// injective on the `a`-divisible part in every window degree.
pub fn comparison_map_check(n: u32, w: &DegreeWindow) -> Result<Outcome> {
    w.validate()?;
    let tk = t_count(super::bp::weight_bound(w, 0));
    let e2 = e2_ring(n, tk)?;
    let target = comparison_target(n, tk);
    let mut pairs: Vec<(String, String)> = vec![
        ("a".into(), "a".into()),
        ("u".into(), "x1^2 + a^2*z1sq".into()),
        ("t1".into(), "z1sq".into()),
    ];
    for i in 1..=n {
        pairs.push((format!("v{i}"), format!("v{i}")));
    }
    for i in 2..=tk {
        pairs.push((format!("t{i}"), format!("z{i}^2")));
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let map: RingMap<F2> = RingMap::from_strings(&e2.table, &target, &refs)?;
    let mut out = Outcome::new();
    out.detail(None, "images are homogeneous of the generator degrees", "yes", "yes");
    let tnames = target.names();
    let a = map.apply(&e2.var("a")?);
    out.detail(Some(deg_a()), "image of a", "a", a.fmt_with(&tnames));
    let two_a = map.apply(&e2.var("a")?.scale(&BigInt::from(2)));
    out.detail(Some(deg_a()), "image of 2*a", "0", two_a.fmt_with(&tnames));
    let u = map.apply(&e2.var("u")?);
    let u_expected: PolyElement<F2> = crate::algebra::parse_poly("x1^2 + a^2*z1sq", &tnames)?;
    let u_shown = if u == u_expected { "x1^2 + a^2*z1sq".to_string() } else { u.fmt_with(&tnames) };
    out.detail(Some(deg_u()), "image of u", "x1^2 + a^2*z1sq", u_shown);

    let tenum = MonomialEnumerator::new(&target)?;
    let ia = e2.table.index("a").expect("a");
    let parts: Result<Vec<Outcome>> = w
        .degrees()
        .par_iter()
        .map(|&d| {
            let mut out = Outcome::new();
            let src: Vec<_> = e2
                .monomials(d)
                .iter()
                .filter(|m| m.exponent(ia) > 0)
                .cloned()
                .collect();
            if src.is_empty() {
                return Ok(out);
            }
            let basis = tenum.monomials(d);
            let index: HashMap<_, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let words = basis.len().div_ceil(64).max(1);
            let mut rows = Vec::with_capacity(src.len());
            for m in &src {
                let img: PolyElement<F2> = map.apply_monomial(m);
                let mut row = vec![0u64; words];
                for (tm, _) in img.terms() {
                    let i = index[tm];
                    row[i / 64] ^= 1 << (i % 64);
                }
                rows.push(row);
            }
            let rank = f2_rank(rows);
            let item = "F2-rank of the image of the a-divisible part";
            if rank == src.len() {
                out.detail(Some(d), item, src.len().to_string(), rank.to_string());
            } else {
                out.fail(Some(d), item, src.len().to_string(), rank.to_string());
            }
            Ok(out)
        })
        .collect();
    for p in parts? {
        out.merge(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(f2_rank(vec![vec![0b011], vec![0b110], vec![0b101]]), 2);
        assert_eq!(f2_rank(vec![vec![0b1], vec![0b10]]), 2);
    }
}
