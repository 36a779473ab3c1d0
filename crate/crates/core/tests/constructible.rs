use hendecagon_core::cyclotomic::classify_constructible;

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn three_smooth(mut m: u64) -> bool {
    for p in [2, 3] {
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    m == 1
}

#[test]
fn agrees_with_totient_oracle() {
    for n in 3..=100u64 {
        let report = classify_constructible(n);
        assert_eq!(
            report.single_fold_constructible,
            three_smooth(totient(n)),
            "n = {n}"
        );
    }
}

#[test]
fn table_up_to_31() {
    let failing: Vec<u64> = (3..=31)
        .filter(|&n| !classify_constructible(n).single_fold_constructible)
        .collect();
    assert_eq!(failing, [11, 22, 23, 25, 29, 31]);
}

#[test]
fn factorization_reconstructs_n() {
    for n in 3..=500u64 {
        let r = classify_constructible(n);
        let product: u64 = 2u64.pow(r.r)
            * 3u64.pow(r.s)
            * r.factors.iter().map(|(p, e)| p.pow(*e)).product::<u64>();
        assert_eq!(product, n);
        for w in &r.pierpont_primes {
            assert_eq!(2u64.pow(w.exp2) * 3u64.pow(w.exp3) + 1, w.prime);
        }
        if r.single_fold_constructible {
            assert!(r.obstructions().is_empty());
        } else {
            assert!(!r.obstructions().is_empty());
        }
    }
}
