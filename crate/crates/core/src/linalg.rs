//! Just enough dense linear algebra for rank and convex-hull tests.

use alloc::vec::Vec;

use crate::math::sqrt;

/// Rank by Gaussian elimination with partial pivoting. Each row is first
/// scaled to unit max-norm; a pivot counts when its magnitude is `≥ tol`.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let scale = r.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            if scale > 0.0 {
                r.iter().map(|x| x / scale).collect()
            } else {
                r.clone()
            }
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let (pivot, mag) =
            (rank..m.len())
                .map(|r| (r, m[r][col].abs()))
                .fold((rank, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag < tol {
            continue;
        }
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            let factor = m[r][col] / m[rank][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..cols {
                m[r][c] -= factor * m[rank][c];
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b`; `None` when a pivot falls below
/// `1e-12` times the largest entry.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Barycentric weights of `point` with respect to the generators indexed by
/// `subset`, by least squares on `[G^T; 1] λ = [point; 1]`. Returns the
/// weights and the Euclidean residual.
pub fn barycentric(point: &[f64], generators: &[Vec<f64>], subset: &[usize]) -> Option<(Vec<f64>, f64)> {
    let s = subset.len();
    let k = point.len();
    // Normal equations of the augmented system.
    let mut ata = alloc::vec![alloc::vec![0.0; s]; s];
    let mut atb = alloc::vec![0.0; s];
    for a in 0..s {
        let ga = &generators[subset[a]];
        for b in 0..s {
            let gb = &generators[subset[b]];
            ata[a][b] = ga.iter().zip(gb).map(|(x, y)| x * y).sum::<f64>() + 1.0;
        }
        atb[a] = ga.iter().zip(point).map(|(x, y)| x * y).sum::<f64>() + 1.0;
    }
    let lambda = solve(ata, atb)?;
    let mut res2 = 0.0;
    for j in 0..k {
        let fit: f64 = subset.iter().zip(&lambda).map(|(&i, l)| l * generators[i][j]).sum();
        res2 += (fit - point[j]) * (fit - point[j]);
    }
    let sum: f64 = lambda.iter().sum();
    res2 += (sum - 1.0) * (sum - 1.0);
    Some((lambda, sqrt(res2)))
}

/// Whether `point` is a convex combination of `generators` up to `tol`
/// (both on the weights and on the residual).
pub fn in_convex_hull(point: &[f64], generators: &[Vec<f64>], tol: f64) -> bool {
    let g = generators.len();
    if g == 0 {
        return false;
    }
    let dim = point.len();
    let max_size = g.min(dim + 1);
    // Carathéodory: some subset of at most dim + 1 generators suffices. Try
    // subsets by increasing size so degenerate systems are avoided.
    let mut subset = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        if search(point, generators, tol, size, 0, &mut subset) {
            return true;
        }
    }
    false
}

fn search(point: &[f64], gens: &[Vec<f64>], tol: f64, size: usize, start: usize, subset: &mut Vec<usize>) -> bool {
    if subset.len() == size {
        return match barycentric(point, gens, subset) {
            Some((lambda, residual)) => residual <= tol && lambda.iter().all(|l| *l >= -tol),
            None => false,
        };
    }
    for i in start..gens.len() {
        subset.push(i);
        let hit = search(point, gens, tol, size, i + 1, subset);
        subset.pop();
        if hit {
            return true;
        }
    }
    false
}
