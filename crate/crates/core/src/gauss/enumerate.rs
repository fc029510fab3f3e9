use super::GaussInt;

/// Every `alpha` with `0 < norm(alpha) <= n`, each once, ordered by norm, then
/// `re` descending, then `im` ascending.
pub fn enumerate_by_norm(n: u64) -> impl Iterator<Item = GaussInt> {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut pts: Vec<GaussInt> = (-r..=r)
        .flat_map(|a| (-r..=r).map(move |b| GaussInt::new(a, b)))
        .filter(|z| {
            let m = z.norm();
            m > 0 && m <= n
        })
        .collect();
    pts.sort_by(|a, b| a.enumeration_cmp(b));
    pts.into_iter()
}

/// `counts[m]` = number of lattice points of norm `m`, for `m = 0..=n`, by a
/// direct scan of the square `[-sqrt n, sqrt n]^2`.
pub fn lattice_count_by_norm(n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize + 1];
    let r = (n as f64).sqrt() as i64 + 1;
    for a in -r..=r {
        for b in -r..=r {
            let m = (a * a + b * b) as u64;
            if m <= n {
                counts[m as usize] += 1;
            }
        }
    }
    counts
}
