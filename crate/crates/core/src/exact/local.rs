//! Linear systems over `Z(2)` by diagonalization with minimal-valuation pivots.

use num_traits::{One, Zero};

use super::scalar::TwoLocal;

fn val(x: &TwoLocal) -> u64 {
    x.valuation().unwrap_or(u64::MAX)
}

/// `x / y` when it lies in `Z(2)`.
fn ldiv(x: &TwoLocal, y: &TwoLocal) -> Option<TwoLocal> {
    if y.is_zero() || val(x) < val(y) {
        return None;
    }
    if x.is_zero() {
        return Some(TwoLocal::zero());
    }
    TwoLocal::from_rational(x.as_rational() / y.as_rational()).ok()
}

/// Some `x` over `Z(2)` with `sum_j x_j cols[j] = b`, or `None`.
pub fn solve_local(cols: &[Vec<TwoLocal>], b: &[TwoLocal]) -> Option<Vec<TwoLocal>> {
    let n = b.len();
    let m = cols.len();
    // a[i][j], row-major
    let mut a: Vec<Vec<TwoLocal>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut rhs = b.to_vec();
    // q: column operations, x = q y
    let mut q: Vec<Vec<TwoLocal>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { TwoLocal::one() } else { TwoLocal::zero() }).collect())
        .collect();
    let mut diag = Vec::new();
    for k in 0..n.min(m) {
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                let v = val(x);
                if v != u64::MAX && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        rhs.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in q.iter_mut() {
            row.swap(k, pj);
        }
        let p = a[k][k].clone();
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = ldiv(&a[i][k], &p).expect("minimal valuation pivot divides");
            for j in k..m {
                let d = f.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - d;
            }
            let d = f * rhs[k].clone();
            rhs[i] = rhs[i].clone() - d;
        }
        for j in k + 1..m {
            if a[k][j].is_zero() {
                continue;
            }
            let f = ldiv(&a[k][j], &p).expect("minimal valuation pivot divides");
            a[k][j] = TwoLocal::zero();
            for row in q.iter_mut() {
                let d = f.clone() * row[k].clone();
                row[j] = row[j].clone() - d;
            }
        }
        diag.push(p);
    }
    let r = diag.len();
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![TwoLocal::zero(); m];
    for k in 0..r {
        y[k] = ldiv(&rhs[k], &diag[k])?;
    }
    Some(
        (0..m)
            .map(|i| (0..m).fold(TwoLocal::zero(), |acc, j| acc + q[i][j].clone() * y[j].clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<TwoLocal> {
        xs.iter().map(|&x| TwoLocal::frac(x, 1)).collect()
    }

    #[test]
    fn solves_when_possible() {
        let cols = vec![v(&[2, 0]), v(&[6, 4])];
        let x = solve_local(&cols, &v(&[2, 12])).unwrap();
        assert_eq!(x, vec![TwoLocal::frac(-8, 1), TwoLocal::frac(3, 1)]);
        assert!(solve_local(&cols, &v(&[1, 0])).is_none());
        assert_eq!(solve_local(&[v(&[3])], &v(&[1])).unwrap(), vec![TwoLocal::frac(1, 3)]);
        assert!(solve_local(&[v(&[1, 1])], &v(&[1, 0])).is_none());
    }
}
