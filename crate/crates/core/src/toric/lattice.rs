//! Integer kernel of a single row vector by unimodular column operations.

/// A basis of `{ b in Z^m : sum q_j b_j = 0 }`.
pub(crate) fn row_kernel(q: &[i64]) -> Vec<Vec<i64>> {
    let m = q.len();
    let mut row = q.to_vec();
    let mut cols: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            let mut e = vec![0; m];
            e[j] = 1;
            e
        })
        .collect();
    let pivot = loop {
        let live: Vec<usize> = (0..m).filter(|&j| row[j] != 0).collect();
        let Some(&p) = live.iter().min_by_key(|&&j| (row[j].abs(), j)) else {
            break None;
        };
        if live.len() == 1 {
            break Some(p);
        }
        for &j in &live {
            if j != p {
                let t = row[j].div_euclid(row[p]);
                row[j] -= t * row[p];
                let (src, dst) = if p < j {
                    let (a, b) = cols.split_at_mut(j);
                    (&a[p], &mut b[0])
                } else {
                    let (a, b) = cols.split_at_mut(p);
                    (&b[0], &mut a[j])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= t * s;
                }
            }
        }
    };
    cols.into_iter().enumerate().filter(|&(j, _)| Some(j) != pivot).map(|(_, c)| c).collect()
}
