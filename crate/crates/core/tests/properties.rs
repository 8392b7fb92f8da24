mod common;

use std::cmp::Ordering;

use cubewalk_core::analysis::{compare_sums, density_report, partial_sums};
use cubewalk_core::automata::patterns;
use cubewalk_core::repetitions::find_runs_in;
use cubewalk_core::runlen::census_with;
use cubewalk_core::words::{
    fibonacci_prefix, morphic_prefix, slope, sturmian_prefix_cf, sturmian_prefix_slope,
    ContinuedFraction, Morphism,
};
use cubewalk_core::{
    compile_str, cube_marks, fib_number, find_runs, max_exponent, runs_of, zeck_decode,
    zeck_encode, Count, Dfa, GoldenConstants, GrowthClass, PatternExpr, Prefix, WordSpec,
};
use proptest::prelude::*;

use common::{naive_marks, naive_runs, named_specs, random_slopes};

fn bits_strategy(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..max_len)
}

fn spec_strategy() -> impl Strategy<Value = WordSpec> {
    let mut specs = named_specs();
    specs.extend(random_slopes(11, 6));
    specs.push("cf:[0;1,2,(3,1)]".parse().unwrap());
    prop::sample::select(specs)
}

// --- words --------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefixes_are_consistent(spec in spec_strategy(), a in 0usize..20_000, b in 0usize..20_000) {
        let (n, m) = (a.min(b), a.max(b));
        let short = spec.prefix(n).unwrap();
        let long = spec.prefix(m).unwrap();
        prop_assert_eq!(short.symbols(), &long.symbols()[..n]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cf_and_slope_generators_agree(seed in any::<u64>()) {
        let WordSpec::SturmianSlope(alpha) = random_slopes(seed, 1).pop().unwrap() else {
            unreachable!()
        };
        let cf = ContinuedFraction::of_slope(&alpha).expect("small partial quotients");
        let by_cf = sturmian_prefix_cf(&cf, 10_000).unwrap();
        let by_slope = sturmian_prefix_slope(&alpha, 10_000).unwrap();
        prop_assert_eq!(by_cf, by_slope, "slope {} with expansion {}", alpha, cf);
    }
}

#[test]
fn cf_and_slope_generators_agree_on_named_slopes() {
    let beta = slope(5, -1, 13, 6).unwrap();
    let golden = slope(3, -1, 5, 2).unwrap();
    for alpha in [beta, golden] {
        let cf = ContinuedFraction::of_slope(&alpha).unwrap();
        assert_eq!(
            sturmian_prefix_cf(&cf, 10_000).unwrap(),
            sturmian_prefix_slope(&alpha, 10_000).unwrap()
        );
    }
    let beta_cf: ContinuedFraction = match WordSpec::beta_cf() {
        WordSpec::SturmianCf(cf) => cf,
        _ => unreachable!(),
    };
    assert_eq!(
        ContinuedFraction::of_slope(&slope(5, -1, 13, 6).unwrap()),
        Some(beta_cf)
    );
}

#[test]
fn three_fibonacci_generators_agree() {
    let n = 100_000;
    let direct = fibonacci_prefix(n);
    let morphic = morphic_prefix(
        &Morphism {
            images: [vec![0, 1], vec![0]],
            seed: 0,
        },
        n,
    )
    .unwrap();
    let cf: WordSpec = "cf:[0;2,(1)]".parse().unwrap();
    assert_eq!(direct, morphic);
    assert_eq!(direct, cf.prefix(n).unwrap());
}

fn sturmian_specs() -> Vec<WordSpec> {
    let mut specs = vec![WordSpec::Fibonacci, WordSpec::beta_cf()];
    specs.extend(random_slopes(5, 4));
    specs
}

#[test]
fn sturmian_prefixes_are_balanced() {
    for spec in sturmian_specs() {
        let p = spec.prefix(10_000).unwrap();
        let s = p.symbols();
        let mut ones = vec![0usize; s.len() + 1];
        for (i, &b) in s.iter().enumerate() {
            ones[i + 1] = ones[i] + b as usize;
        }
        for len in 1..=200 {
            let counts = (0..=s.len() - len).map(|i| ones[i + len] - ones[i]);
            let (lo, hi) = counts.fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
            assert!(
                hi - lo <= 1,
                "{spec}: windows of length {len} hold {lo}..{hi} ones"
            );
        }
    }
}

#[test]
fn beta_word_factors_into_two_blocks() {
    let p = WordSpec::beta_cf().prefix(10_000).unwrap();
    let s = p.symbols();
    // every 1 closes a block; the block is 0001 or 00001
    let mut start = 0;
    let mut blocks = [0usize; 2];
    for (i, &b) in s.iter().enumerate() {
        if b == 1 {
            match &s[start..=i] {
                [0, 0, 0, 1] => blocks[0] += 1,
                [0, 0, 0, 0, 1] => blocks[1] += 1,
                other => panic!("block {other:?} at {start}"),
            }
            start = i + 1;
        }
    }
    assert!(s[start..].iter().all(|&b| b == 0) && s.len() - start < 5);
    assert!(blocks[0] > 0 && blocks[1] > 0);
}

// --- repetitions --------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn runs_match_exhaustive_search(s in bits_strategy(40)) {
        let got: Vec<_> = find_runs_in(&s).iter().map(|r| (r.start, r.end, r.period)).collect();
        let want: Vec<_> = naive_runs(&s).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn marks_match_definition_on_random_strings(s in bits_strategy(200), min_period in 1usize..4) {
        let marks = cube_marks(&Prefix::new(s.clone()), min_period);
        prop_assert_eq!(marks.bits, naive_marks(&s, min_period));
    }
}

#[test]
fn marks_match_definition_on_named_and_random_words() {
    let mut specs = named_specs();
    specs.extend(random_slopes(2024, 20));
    for spec in specs {
        let p = spec.prefix(2000).unwrap();
        for min_period in [1, 2] {
            assert_eq!(
                cube_marks(&p, min_period).bits,
                naive_marks(p.symbols(), min_period),
                "{spec} min_period {min_period}"
            );
        }
    }
}

#[test]
fn reported_runs_are_periodic_and_maximal() {
    for spec in named_specs() {
        let p = spec.prefix(5000).unwrap();
        let s = p.symbols();
        for r in find_runs(&p) {
            let f = &s[r.start..=r.end];
            assert!(r.len() >= 2 * r.period, "{spec}: {r:?} too short");
            assert!(
                (r.period..f.len()).all(|k| f[k] == f[k - r.period]),
                "{spec}: {r:?} not periodic"
            );
            assert!(
                (1..r.period).all(|q| (q..f.len()).any(|k| f[k] != f[k - q])),
                "{spec}: {r:?} period not minimal"
            );
            assert!(
                r.start == 0 || s[r.start - 1] != s[r.start - 1 + r.period],
                "{spec}: {r:?} extends left"
            );
            assert!(
                r.end + 1 == s.len() || s[r.end + 1] != s[r.end + 1 - r.period],
                "{spec}: {r:?} extends right"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn marks_only_depend_on_the_past(spec in spec_strategy(), a in 1usize..6000, b in 1usize..6000) {
        let (n, m) = (a.min(b), a.max(b));
        let short = cube_marks(&spec.prefix(n).unwrap(), 1);
        let long = cube_marks(&spec.prefix(m).unwrap(), 1);
        prop_assert_eq!(&short.bits[..], &long.bits[..n]);
    }

    #[test]
    fn fibonacci_exponent_is_monotone_and_bounded(a in 1usize..100_000, b in 1usize..100_000) {
        let (n, m) = (a.min(b), a.max(b));
        let golden = GoldenConstants::default();
        let en = max_exponent(&fibonacci_prefix(n));
        let em = max_exponent(&fibonacci_prefix(m));
        prop_assert!(en <= em);
        prop_assert_ne!(golden.cmp_two_plus_phi(&em), Ordering::Greater);
    }
}

#[test]
fn fibonacci_marks_ignore_period_one() {
    let p = fibonacci_prefix(10_000);
    assert_eq!(cube_marks(&p, 1).bits, cube_marks(&p, 2).bits);
}

// --- runlen -------------------------------------------------------------

proptest! {
    #[test]
    fn symbol_runs_tile_the_sequence(bits in bits_strategy(300)) {
        let mut runs = runs_of(&bits, 0);
        runs.extend(runs_of(&bits, 1));
        runs.sort_by_key(|r| r.start);
        let mut next = 0;
        for r in &runs {
            prop_assert_eq!(r.start, next);
            prop_assert!(r.length > 0);
            prop_assert_eq!(r.complete, r.end() < bits.len());
            next = r.end();
        }
        prop_assert_eq!(next, bits.len());
    }
}

#[test]
fn complete_one_runs_have_fibonacci_minus_one_lengths() {
    let marks = cube_marks(&fibonacci_prefix(200_000), 1);
    let allowed: Vec<usize> = (3..40)
        .map(|m| fib_number::<u64>(m).unwrap() as usize - 1)
        .collect();
    for r in runs_of(&marks.bits, 1).into_iter().filter(|r| r.complete) {
        assert!(
            allowed.contains(&r.length),
            "run of 1's of length {} at {}",
            r.length,
            r.start
        );
    }
}

// --- zeckendorf ---------------------------------------------------------

#[test]
fn zeckendorf_round_trip_to_a_million() {
    for n in 0u64..=1_000_000 {
        let z = zeck_encode(&n);
        assert_eq!(z.value::<u64>().unwrap(), n);
        assert!(!z.digits().windows(2).any(|w| w == [1, 1]));
    }
}

fn radix_cmp(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

proptest! {
    #[test]
    fn zeckendorf_preserves_order(n in 0u64..100_000, m in 0u64..100_000) {
        let (a, b) = (zeck_encode(&n), zeck_encode(&m));
        prop_assert_eq!(radix_cmp(a.digits(), b.digits()), n.cmp(&m));
    }

    #[test]
    fn zeckendorf_agrees_across_scalar_types(n in any::<u64>()) {
        let big = Count::from(n);
        prop_assert_eq!(zeck_encode(&n), zeck_encode(&big));
    }
}

#[test]
fn fibonacci_sum_identities() {
    let f = |m: usize| fib_number::<Count>(m).unwrap();
    for n in 1..=40 {
        let odd: Count = (0..n).map(|j| f(2 * j + 1)).sum();
        assert_eq!(odd, f(2 * n), "odd-index sum, n = {n}");
        let even: Count = (1..=n).map(|j| f(2 * j)).sum();
        assert_eq!(even + 1u32, f(2 * n + 1), "even-index sum, n = {n}");
    }
}

#[test]
fn alternating_strings_decode_to_fibonacci_minus_one() {
    for n in 1..=20 {
        let even = "10".repeat(n);
        let odd = format!("{even}1");
        assert_eq!(
            zeck_decode::<u64>(&even).unwrap(),
            fib_number::<u64>(2 * n + 2).unwrap() - 1
        );
        assert_eq!(
            zeck_decode::<u64>(&odd).unwrap(),
            fib_number::<u64>(2 * n + 3).unwrap() - 1
        );
    }
}

// --- automata -----------------------------------------------------------

fn pattern_strategy() -> impl Strategy<Value = PatternExpr> {
    let leaf = prop_oneof![
        Just(PatternExpr::Epsilon),
        Just(PatternExpr::Literal(0)),
        Just(PatternExpr::Literal(1)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PatternExpr::Concat(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| PatternExpr::Union(vec![a, b])),
            inner.clone().prop_map(|a| PatternExpr::Star(Box::new(a))),
            inner.clone().prop_map(|a| PatternExpr::Plus(Box::new(a))),
            inner.prop_map(|a| PatternExpr::Optional(Box::new(a))),
        ]
    })
}

fn all_strings(m: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << m).map(move |x| (0..m).rev().map(|k| ((x >> k) & 1) as u8).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counts_match_exhaustive_enumeration(expr in pattern_strategy()) {
        let dfa = cubewalk_core::compile(&expr);
        for m in 0..=12 {
            let brute = all_strings(m).filter(|w| dfa.accepts_bits(w)).count() as u64;
            prop_assert_eq!(dfa.count_length::<u64>(m).unwrap(), brute, "{} at length {}", expr, m);
            prop_assert_eq!(dfa.enumerate(m).len() as u64, brute);
        }
    }

    #[test]
    fn compiled_automata_are_minimal(expr in pattern_strategy()) {
        let dfa = cubewalk_core::compile(&expr);
        prop_assert!(dfa.is_minimal());
        prop_assert_eq!(dfa.minimize().state_count(), dfa.state_count());
    }

    #[test]
    fn growth_class_matches_counts(expr in pattern_strategy()) {
        let dfa = cubewalk_core::compile(&expr);
        let counts: Vec<f64> = (0..=60).map(|m| dfa.count_length::<u64>(m).unwrap() as f64).collect();
        match dfa.growth_class() {
            GrowthClass::Finite => prop_assert!(counts[30..].iter().all(|&c| c == 0.0)),
            GrowthClass::Polynomial => {
                let k = dfa.polynomial_degree().unwrap() as i32;
                let c = counts.iter().cloned().fold(1.0, f64::max);
                for (m, &x) in counts.iter().enumerate().skip(1) {
                    prop_assert!(x <= c * (m as f64).powi(k), "{} exceeds {}·{}^{}", x, c, m, k);
                }
            }
            GrowthClass::Exponential => {
                let jumps = (40..60).filter(|&m| counts[m + 1] > 1.05 * counts[m]).count();
                prop_assert!(jumps > 0, "{}: no growth in {:?}", expr, &counts[40..]);
            }
        }
    }

    #[test]
    fn pattern_text_round_trips(expr in pattern_strategy()) {
        let again: PatternExpr = expr.to_string().parse().unwrap();
        prop_assert!(cubewalk_core::compile(&again).equivalent(&cubewalk_core::compile(&expr)));
    }
}

#[test]
fn valid_zeckendorf_counts_and_double_complement() {
    let v = Dfa::valid_zeckendorf();
    let counts: Vec<u64> = (1..=6).map(|m| v.count_length(m).unwrap()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 8]);
    assert_eq!(v.count_length::<u64>(0).unwrap(), 0);
    for p in [
        patterns::ONE_RUN_START,
        patterns::ZERO_RUN_8,
        patterns::ZERO_RUN_7,
    ] {
        let dfa = compile_str(p).unwrap();
        let twice = dfa.complement_within_valid().complement_within_valid();
        for m in 0..=20 {
            assert_eq!(
                twice.count_length::<u64>(m).unwrap(),
                dfa.count_length::<u64>(m).unwrap()
            );
        }
    }
}

#[test]
fn documented_pattern_spelling_is_accepted() {
    let written = compile_str("(10)^+0(0+10)(00)*0(0(10)*(1?))").unwrap();
    assert!(written.equivalent(&compile_str(patterns::ONE_RUN_START).unwrap()));
}

// --- analysis -----------------------------------------------------------

#[test]
fn beta_dominates_fibonacci_after_the_first_two_points() {
    let c = compare_sums(&WordSpec::beta_cf(), &WordSpec::Fibonacci, 1, 3000, 1).unwrap();
    let ties: Vec<usize> = c.exceptions.iter().map(|e| e.0).collect();
    assert_eq!(ties, [1, 2]);
    assert!(c.exceptions.iter().all(|&(_, a, b)| a == 0 && b == 0));
    let strict = compare_sums(&WordSpec::beta_cf(), &WordSpec::Fibonacci, 3, 3000, 1).unwrap();
    assert!(strict.strict_dominance);
    assert_eq!(strict.greater, 2998);

    let same = compare_sums(&WordSpec::Fibonacci, &WordSpec::Fibonacci, 2, 100, 1).unwrap();
    assert_eq!(same.equal, 99);
}

#[test]
fn density_matches_zero_run_census() {
    for spec in named_specs() {
        let n = 20_000;
        let d = density_report(&spec, &[n], 1).unwrap();
        let marks = cube_marks(&spec.prefix(n).unwrap(), 1);
        let c = census_with(&marks.bits, 0, 0, true);
        let zeros: usize = c.counts.iter().map(|(l, k)| l * k).sum();
        assert_eq!(d.rows[0].zeros, zeros, "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_sums_are_monotone_and_bounded(spec in spec_strategy(), mut cps in prop::collection::btree_set(1usize..5000, 1..8)) {
        let cps: Vec<usize> = std::mem::take(&mut cps).into_iter().collect();
        let t = partial_sums(&spec, &cps, 1).unwrap();
        let d = density_report(&spec, &cps, 1).unwrap();
        for w in t.rows.windows(2) {
            prop_assert!(w[0].s <= w[1].s);
        }
        for (r, z) in t.rows.iter().zip(&d.rows) {
            prop_assert!(r.s <= r.n);
            prop_assert_eq!(z.zeros, r.n - r.s);
            prop_assert!((0.0..=1.0).contains(&z.fraction));
        }
    }
}

#[test]
fn fibonacci_reports_ignore_period_one() {
    let cps = [500, 1000, 2000, 3000, 50_000];
    let a = partial_sums(&WordSpec::Fibonacci, &cps, 1).unwrap();
    let b = partial_sums(&WordSpec::Fibonacci, &cps, 2).unwrap();
    assert_eq!(a.rows, b.rows);
    let ea = cubewalk_core::max_no_cubes_estimate(&WordSpec::Fibonacci, 50_000, 14, 5, 1).unwrap();
    let eb = cubewalk_core::max_no_cubes_estimate(&WordSpec::Fibonacci, 50_000, 14, 5, 2).unwrap();
    assert_eq!((ea.census, ea.estimate), (eb.census, eb.estimate));
}
