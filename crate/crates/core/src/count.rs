//! Closed-form counts.

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc as u64
}

/// The Harary-Hill number `Z(n) = 1/4 * floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`,
/// the 2-page crossing number of `K_n`.
pub fn z_number(n: u64) -> u64 {
    if n < 4 {
        return 0;
    }
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(z_number(1), 0);
        assert_eq!(z_number(4), 0);
        assert_eq!(z_number(5), 1);
        assert_eq!(z_number(8), 18);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn closed_forms_agree_up_to_200() {
        for n in 1..=200u64 {
            let closed = if n % 2 == 1 {
                (n - 1) * (n - 1) * (n.saturating_sub(3)).pow(2) / 64
            } else {
                n * (n - 2) * (n - 2) * n.saturating_sub(4) / 64
            };
            assert_eq!(z_number(n), closed, "n={n}");
        }
    }
}
