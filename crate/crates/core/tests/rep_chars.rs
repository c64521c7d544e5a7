use confmeasure::rep_chars::{
    count_partitions_length, count_partitions_length_no_ones, partitions, sym_power_multiplicities,
    tensor_decomp_check, wedge2_multiplicities, wedge_halfform_weights, CharacterSeries, Partition, SymSource,
};

fn brute_length(weight: usize, n: usize, min_part: usize) -> u64 {
    partitions(weight)
        .iter()
        .filter(|p| p.len() == n && p.parts().iter().all(|&k| k >= min_part))
        .count() as u64
}

#[test]
fn dp_matches_enumeration_through_twenty() {
    for w in 0..=20 {
        for n in 0..=w {
            assert_eq!(count_partitions_length(w, n), brute_length(w, n, 1), "p_{n}({w})");
            assert_eq!(count_partitions_length_no_ones(w, n), brute_length(w, n, 2), "({w}, {n}) no ones");
        }
    }
}

#[test]
fn partition_totals() {
    let p = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627];
    for (n, &count) in p.iter().enumerate() {
        assert_eq!(partitions(n).len(), count);
    }
    assert_eq!(count_partitions_length(4, 2), 2);
    let lam = Partition::new(vec![1, 3, 3, 2]).unwrap();
    assert_eq!(lam.parts(), &[3, 3, 2, 1]);
    assert_eq!((lam.weight(), lam.len(), lam.multiplicity(3)), (9, 4, 2));
    assert!(Partition::new(vec![2, 0]).is_err());
}

#[test]
fn difference_counts_equal_partitions_with_repeated_top() {
    // p_n(N) - p_n(N-1) = #{λ ∈ P_n(N) : the two largest parts agree}
    for n in 2..=6 {
        let mults = sym_power_multiplicities(n, SymSource::H1, 20).unwrap();
        for w in 0..=20 {
            let direct = partitions(w).iter().filter(|p| p.len() == n && p.parts()[0] == p.parts()[1]).count();
            assert_eq!(mults[w], direct as i64, "n={n}, N={w}");
        }
    }
}

#[test]
fn symmetric_power_lists() {
    // S^1(H^1) = H^1: one summand, character coefficient 1 at every N >= 1
    let s1 = sym_power_multiplicities(1, SymSource::H1, 15).unwrap();
    assert_eq!(s1[1], 1);
    assert!(s1.iter().enumerate().all(|(w, &m)| m == (w == 1) as i64));
    let chi = CharacterSeries { offset_doubled: 0, coeffs: s1 }.over_one_minus_q();
    assert!(chi.coeffs[1..].iter().all(|&c| c == 1));

    let s2 = sym_power_multiplicities(2, SymSource::H1, 20).unwrap();
    for (w, &m) in s2.iter().enumerate() {
        assert_eq!(m, (w >= 2 && w % 2 == 0) as i64, "N = {w}");
    }

    let s3 = sym_power_multiplicities(3, SymSource::H1, 12).unwrap();
    assert_eq!(s3, vec![0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2]);
    assert!(sym_power_multiplicities(0, SymSource::H1, 5).is_err());
}

#[test]
fn h2_powers_are_shifted_h1_powers() {
    // subtracting 1 from every part: S^n(H^2) carries H^{N+n} where S^n(H^1) carries H^N
    for n in 1..=5 {
        let a = sym_power_multiplicities(n, SymSource::H1, 30).unwrap();
        let b = sym_power_multiplicities(n, SymSource::H2, 30 + n).unwrap();
        assert!(b[..n].iter().all(|&m| m == 0));
        assert_eq!(&b[n..], &a[..], "n = {n}");
    }
    let s2 = sym_power_multiplicities(2, SymSource::H2, 16).unwrap();
    for (w, &m) in s2.iter().enumerate() {
        assert_eq!(m, (w >= 4 && w % 2 == 0) as i64);
    }
}

#[test]
fn character_reconstruction() {
    // Σ_N mult(N) q^N / (1 - q) = Σ_N p_n(N) q^N
    for n in 1..=5 {
        let mult = sym_power_multiplicities(n, SymSource::H1, 30).unwrap();
        let chi = CharacterSeries { offset_doubled: 0, coeffs: mult }.over_one_minus_q();
        let expected: Vec<i64> = (0..=30).map(|w| brute_length(w, n, 1) as i64).collect();
        assert_eq!(chi.coeffs, expected, "n = {n}");
        assert_eq!(chi.times_one_minus_q().coeffs, sym_power_multiplicities(n, SymSource::H1, 30).unwrap());
    }
}

#[test]
fn sym2_equals_wedge2_through_forty() {
    let s2 = sym_power_multiplicities(2, SymSource::H1, 40).unwrap();
    assert_eq!(s2, wedge2_multiplicities(40));
}

/// Number of `n`-subsets of odd positive integers with sum `w`.
fn odd_subsets(n: usize, w: usize, min_odd: usize) -> i64 {
    if n == 0 {
        return (w == 0) as i64;
    }
    let mut total = 0;
    let mut o = min_odd;
    while o * n <= w {
        total += odd_subsets(n - 1, w - o, o + 2);
        o += 2;
    }
    total
}

/// Coefficients of `1 / ∏_{k=2}^n (1 - q^k)`: partitions into parts `2..=n`.
fn parts_two_to_n(n: usize, len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len];
    c[0] = 1;
    for k in 2..=n {
        for w in k..len {
            c[w] += c[w - k];
        }
    }
    c
}

#[test]
fn wedge_two_is_multiplicity_free() {
    let w = wedge_halfform_weights(2, 5).unwrap();
    assert_eq!(w.weights_doubled, vec![4, 8, 12, 16, 20, 24]);
    assert!(w.multiplicity_free && w.matches_character);
}

#[test]
fn wedge_powers_follow_the_character() {
    for n in 1..=5 {
        let w = wedge_halfform_weights(n, 6).unwrap();
        let top = *w.weights_doubled.last().unwrap() as usize;
        // the character itself, from odd subsets
        let chars: Vec<i64> = (0..=top).map(|t| odd_subsets(n, t, 1)).collect();
        let mut recon = vec![0i64; top + 1];
        for &(lw, m) in &w.observed {
            for t in (lw as usize..=top).step_by(2) {
                recon[t] += m;
            }
        }
        assert_eq!(recon, chars, "n = {n}");
        // one step of q is 2 in doubled weight
        let steps = parts_two_to_n(n, top / 2 + 1);
        for &(lw, m) in &w.observed {
            assert_eq!((lw as usize - n * n) % 2, 0);
            assert_eq!(m, steps[(lw as usize - n * n) / 2]);
        }
    }
    // H^{1/2} is irreducible; Λ^3 contains H^{13/2} and a doubled summand
    let one = wedge_halfform_weights(1, 3).unwrap();
    assert_eq!(one.observed, vec![(1, 1)]);
    assert!(!one.matches_character);
    let three = wedge_halfform_weights(3, 3).unwrap();
    assert_eq!(three.observed[..3], [(9, 1), (13, 1), (15, 1)]);
    assert!(!three.multiplicity_free);
    assert!(wedge_halfform_weights(0, 3).is_err());
}

#[test]
fn tensor_products() {
    let half = tensor_decomp_check(1, 1, 30).unwrap();
    assert!(half.holds);
    assert!(half.multiplicities.iter().all(|&m| m == 1));
    let one = tensor_decomp_check(2, 2, 10).unwrap();
    assert!(one.holds);
    assert_eq!(&one.weights_doubled[..3], &[4, 6, 8]);
    let lead = tensor_decomp_check(3, 3, 0).unwrap();
    assert!(lead.holds);
    assert_eq!(lead.weights_doubled, vec![6]);
    assert!(tensor_decomp_check(0, 1, 3).is_err());
    // mixed half-integer and integer weights
    assert!(tensor_decomp_check(1, 4, 25).unwrap().holds);
}
