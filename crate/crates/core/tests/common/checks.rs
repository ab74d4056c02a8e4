//! Whole-suite checks shared by the topic suites and the acceptance runner.
//! Each one panics on the first violation and returns how many cases it
//! covered.

use std::collections::HashSet;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rauzykit::classes::{all_irreducible, all_irreducible_standardized, holonomy};
use rauzykit::*;
use rayon::prelude::*;

use super::*;

/// One pair per labeled extended class, over all irreducible pairs of size n.
pub fn class_representatives(n: usize) -> Vec<(Pair, ClassEnumeration)> {
    let mut covered = HashSet::new();
    let mut out = Vec::new();
    for p in all_irreducible(n).unwrap() {
        if covered.contains(&p) {
            continue;
        }
        let class = extended_class(&p).unwrap();
        covered.extend(class.members());
        out.push((p, class));
    }
    out
}

pub fn expected_group(p: &Pair) -> GroupClassification {
    if profile(p).unwrap().is_simple() {
        GroupClassification::Alternating
    } else {
        GroupClassification::Symmetric
    }
}

// Invariance.

pub fn sigma_invariant_under_right_moves(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 2..=max_n {
        for p in all_irreducible(n).unwrap() {
            let s = sigma(&p).unwrap();
            let m = marked_structure(&p).unwrap();
            for mv in Move::RIGHT {
                let q = p.apply(mv).unwrap();
                assert_eq!(sigma(&q).unwrap(), s, "{p} -> {q}");
                assert_eq!(marked_structure(&q).unwrap(), m, "{p} -> {q}");
                checked += 1;
            }
        }
    }
    checked
}

pub fn profile_and_spin_constant_on_extended_classes(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 2..=max_n {
        for (p, class) in class_representatives(n) {
            let prof = profile(&p).unwrap();
            let sp = spin(&p).unwrap();
            for q in class.members() {
                assert_eq!(profile(&q).unwrap(), prof, "{p} ~ {q}");
                assert_eq!(spin(&q).unwrap(), sp, "{p} ~ {q}");
                checked += 1;
            }
        }
    }
    checked
}

/// Also compares each class's group with the brute-force oracle.
pub fn renaming_group_constant_on_extended_classes(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 2..=max_n {
        for (p, class) in class_representatives(n) {
            let gamma = renaming_group(&p).unwrap();
            let oracle = brute_renamings(&rows_of(&p));
            let elements: std::collections::BTreeSet<Vec<usize>> = gamma
                .elements()
                .iter()
                .map(|g| g.images().map(Letter::index).collect())
                .collect();
            assert_eq!(elements, oracle, "{p}");
            for q in class.members() {
                assert!(
                    renaming_group(&q).unwrap().same_elements(&gamma),
                    "{p} ~ {q}"
                );
                checked += 1;
            }
        }
    }
    checked
}

// Renaming groups.

/// Every labeled pair: the holonomy group is Alt for a simple profile and
/// Sym otherwise, and equals the brute-force group element for element.
pub fn holonomy_matches_brute_force_on_all_pairs(max_n: usize) -> usize {
    (2..=max_n)
        .map(|n| {
            let pairs = all_irreducible(n).unwrap();
            pairs.par_iter().for_each(|p| {
                let h = holonomy(p, Flavor::Extended, Budget::default()).unwrap();
                assert_eq!(h.group.classification(), expected_group(p), "{p}");
                let brute = renaming_group_bruteforce(p).unwrap();
                assert!(h.group.same_elements(&brute), "{p}");
            });
            pairs.len()
        })
        .sum()
}

// Switch moves.

pub fn standard_pairs(n: usize) -> Vec<Pair> {
    all_irreducible(n)
        .unwrap()
        .into_iter()
        .filter(Pair::is_standard)
        .collect()
}

/// Every switch path of length at most two from `p`.
pub fn short_paths(p: &Pair) -> Vec<SwitchPath> {
    let mut out = vec![SwitchPath::new(p.clone(), Vec::new())];
    for m1 in SwitchMove::all_on(p) {
        let q = m1.apply(p).unwrap();
        out.push(SwitchPath::new(p.clone(), vec![m1]));
        for m2 in SwitchMove::all_on(&q) {
            out.push(SwitchPath::new(p.clone(), vec![m1, m2]));
        }
    }
    out
}

/// `N(end) = N(start) ∗ μ` along every switch path of length at most two.
pub fn quotient_identity_over_short_paths(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 3..=max_n {
        for p in standard_pairs(n) {
            let np = marked_structure(&p).unwrap();
            for path in short_paths(&p) {
                let q = path.end().unwrap();
                assert!(q.is_standard() && q.is_irreducible(), "{p} --{path}--> {q}");
                let mu = path.mu().unwrap();
                assert_eq!(
                    marked_structure(&q).unwrap(),
                    np.act(&mu).unwrap(),
                    "{p} --{path}--> {q}, mu = {mu}"
                );
                checked += 1;
            }
        }
    }
    checked
}

/// An induction word for every switch on every standard non-labeled pair.
pub fn every_switch_realized(max_n: usize) -> usize {
    let mut realized = 0;
    for n in 3..=max_n {
        for p in all_irreducible_standardized(n).unwrap() {
            if !p.is_standard() {
                continue;
            }
            let mut search = InductionSearch::new(&p).unwrap();
            for m in SwitchMove::all_on(&p) {
                let q = m.apply(&p).unwrap();
                let Realization::Witness(word) = search.witness(&q).unwrap() else {
                    panic!("unverified at n={n}");
                };
                assert_eq!(p.apply_all(&word).unwrap(), q);
                realized += 1;
            }
        }
    }
    realized
}

// Insertions.

pub fn names_of(p: &Pair) -> Names {
    let r = |e| {
        p.row(e)
            .into_iter()
            .map(|l| p.name(l).to_string())
            .collect()
    };
    (r(0), r(1))
}

/// `x` placed just before `b0` in the top row and before `b1` below.
pub fn naive_insert(rows: &Names, x: &str, b0: &str, b1: &str) -> Names {
    let put = |row: &Vec<String>, b: &str| {
        let mut out = row.clone();
        let k = out.iter().position(|y| y == b).unwrap();
        out.insert(k, x.to_string());
        out
    };
    (put(&rows.0, b0), put(&rows.1, b1))
}

pub fn random_pair(rng: &mut StdRng, lo: usize, hi: usize) -> Pair {
    loop {
        let n = rng.gen_range(lo..=hi);
        let mut a: Vec<usize> = (0..n).collect();
        let mut b = a.clone();
        a.shuffle(rng);
        b.shuffle(rng);
        let r = (a, b);
        if irreducible(&r) {
            return pair_of(&Alphabet::standard(n).unwrap(), &r);
        }
    }
}

/// Random multi-insertions agree with every sequential order of the naive
/// single insertion.
pub fn multi_insertions_order_independent(seed: u64, count: usize) -> usize {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut irreducible_results, mut reducible_results) = (0, 0);
    for _ in 0..count {
        let p = random_pair(&mut rng, 3, 9);
        let k = rng.gen_range(1..=3.min(p.len()));
        let letters: Vec<Letter> = p.alphabet().letters().collect();
        let anchors0: Vec<Letter> = letters.choose_multiple(&mut rng, k).copied().collect();
        let anchors1: Vec<Letter> = letters.choose_multiple(&mut rng, k).copied().collect();
        let xs: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        let rule = InsertionRule::new(xs.clone(), anchors0.clone(), anchors1.clone());

        let base = names_of(&p);
        let mut results = (0..k).permutations(k).map(|order| {
            order.iter().fold(base.clone(), |rows, &i| {
                naive_insert(&rows, &xs[i], p.name(anchors0[i]), p.name(anchors1[i]))
            })
        });
        let first = results.next().unwrap();
        assert!(
            results.all(|r| r == first),
            "{p}: {}",
            rule.display(p.alphabet())
        );

        let expected = Pair::from_names(&first.0, &first.1).unwrap();
        match multi_insert(&p, &rule) {
            Ok(q) => {
                assert_eq!(q, expected);
                irreducible_results += 1;
            }
            Err(Error::Reducible(_)) => {
                assert!(!expected.is_irreducible());
                reducible_results += 1;
            }
            Err(e) => panic!("{p}: {e}"),
        }
    }
    assert!(irreducible_results > count / 2, "{irreducible_results}");
    irreducible_results + reducible_results
}

pub fn predicted_sigma_random(seed: u64, count: usize) -> usize {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let p = random_pair(&mut rng, 2, 10);
        let letters: Vec<Letter> = p.alphabet().letters().collect();
        let b0 = *letters.choose(&mut rng).unwrap();
        let b1 = *letters.choose(&mut rng).unwrap();
        let Ok(q) = prefix_insert(&p, "x", b0, b1) else {
            continue;
        };
        let predicted = predicted_sigma(&p, "x", b0, b1).unwrap();
        assert_eq!(
            predicted,
            sigma(&q).unwrap(),
            "{p} x<-({},{})",
            p.name(b0),
            p.name(b1)
        );
        checked += 1;
    }
    checked
}

fn letter_pairs(p: &Pair) -> Vec<(Letter, Letter)> {
    let letters: Vec<Letter> = p.alphabet().letters().collect();
    letters
        .iter()
        .copied()
        .cartesian_product(letters.iter().copied())
        .collect()
}

pub fn predicted_sigma_exhaustive(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 2..=max_n {
        for p in all_irreducible(n).unwrap() {
            for (b0, b1) in letter_pairs(&p) {
                if let Ok(q) = prefix_insert(&p, "x", b0, b1) {
                    assert_eq!(
                        predicted_sigma(&p, "x", b0, b1).unwrap(),
                        sigma(&q).unwrap()
                    );
                    checked += 1;
                }
            }
        }
    }
    checked
}

/// Switching then inserting the transported rule equals inserting then
/// switching, for every standard pair, switch and admissible single rule.
pub fn transport_rule_sound(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 3..=max_n {
        for p in standard_pairs(n) {
            let (a, z) = (p.first(0), p.first(1));
            for m in SwitchMove::all_on(&p) {
                let moved = m.apply(&p).unwrap();
                for (b0, b1) in letter_pairs(&p) {
                    if b0 == a || b1 == z {
                        continue;
                    }
                    let rule = InsertionRule::single("x", b0, b1);
                    let Ok(hat) = multi_insert(&p, &rule) else {
                        continue;
                    };
                    let transported = transport_rule(&p, m, &rule).unwrap();
                    let m_hat = m.relabel(p.alphabet(), hat.alphabet()).unwrap();
                    let lhs = m_hat.apply(&hat).unwrap();
                    let rhs = multi_insert(&moved, &transported).unwrap();
                    assert_eq!(
                        lhs,
                        rhs,
                        "{p} {} rule {}",
                        m.display(p.alphabet()),
                        rule.display(p.alphabet())
                    );
                    checked += 1;
                }
            }
        }
    }
    checked
}

/// Every `ν` with `to ∗ ν = from`, as permutations of the shared alphabet.
pub fn renamings_between(
    from: &MarkedCycleStructure,
    to: &MarkedCycleStructure,
) -> Vec<Permutation> {
    let alphabet = from.alphabet().clone();
    let n = alphabet.len();
    let src = from.cycles();
    let dst = to.cycles();
    let mut out = Vec::new();
    let mut images = vec![None; n];
    images[from.marked().index()] = Some(to.marked());
    fn assign(
        i: usize,
        src: &[Vec<Letter>],
        dst: &[Vec<Letter>],
        used: &mut Vec<bool>,
        images: &mut Vec<Option<Letter>>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if i == src.len() {
            out.push(images.iter().map(|x| x.unwrap()).collect());
            return;
        }
        let c = &src[i];
        for (j, d) in dst.iter().enumerate() {
            if used[j] || d.len() != c.len() {
                continue;
            }
            used[j] = true;
            for rot in 0..d.len() {
                for (k, &x) in c.iter().enumerate() {
                    images[x.index()] = Some(d[(k + rot) % d.len()]);
                }
                assign(i + 1, src, dst, used, images, out);
            }
            used[j] = false;
        }
    }
    let mut raw = Vec::new();
    assign(
        0,
        &src,
        &dst,
        &mut vec![false; dst.len()],
        &mut images,
        &mut raw,
    );
    for images in raw {
        let nu = Permutation::from_images(&alphabet, &images).unwrap();
        assert_eq!(&to.act(&nu).unwrap(), from);
        out.push(nu);
    }
    out
}

/// Renamings with `N(p̂′) ∗ ν = N(p̂)` that fix `x` and centralize `N(p)`.
pub fn related_by_centralizer(p: &Pair, hat: &Pair, hat2: &Pair) -> Vec<Permutation> {
    let np = marked_structure(p).unwrap();
    let x = hat.letter("x").unwrap();
    renamings_between(
        &marked_structure(hat).unwrap(),
        &marked_structure(hat2).unwrap(),
    )
    .into_iter()
    .filter(|nu| nu.apply(x) == x)
    .filter(|nu| {
        let images: Vec<Letter> = p
            .alphabet()
            .letters()
            .map(|l| {
                p.letter(hat.name(nu.apply(hat.letter(p.name(l)).unwrap())))
                    .unwrap()
            })
            .collect();
        let restricted = Permutation::from_images(p.alphabet(), &images).unwrap();
        np.act(&restricted).unwrap() == np
    })
    .collect()
}

/// Library spin cross-checked against the Arf oracle up to ten letters.
/// Beyond that the block-form search can exhaust its budget, so the oracle
/// value is used to test the lemmas themselves.
pub fn spin_checked(p: &Pair) -> SpinParity {
    let oracle = arf_spin(&rows_of(p));
    if p.len() > 10 {
        return oracle.map_or(SpinParity::Undefined, |v| SpinParity::from_bit(v as usize));
    }
    let s = spin(p).unwrap();
    assert_eq!(s.value(), oracle, "{p}");
    s
}

/// One prefix letter joining the two even cycles of a single
/// three-and-twos block, for m, n ≤ 1: anchors `(e, d)` give spin 0 and
/// `(e, f)` spin 1, and two results share a spin exactly when the
/// centralizer renamings relating them are even.
pub fn joining_even_cycles(max: usize) -> usize {
    let mut checked = 0;
    for (m, n) in (0..=max).cartesian_product(0..=max) {
        let p = assemble(&[three_and_twos("c", m, n)], &[]);
        let l = |s: &str| p.letter(&format!("c{s}")).unwrap();
        let zero = prefix_insert(&p, "x", l("e"), l("d")).unwrap();
        let one = prefix_insert(&p, "x", l("e"), l("f")).unwrap();
        assert_eq!(spin_checked(&zero), SpinParity::Zero, "{zero}");
        assert_eq!(spin_checked(&one), SpinParity::One, "{one}");
        assert_eq!(spin_from_blocks(&zero).unwrap(), SpinParity::Zero);

        let even = profile(&p)
            .unwrap()
            .lengths()
            .iter()
            .filter(|&&l| l % 2 == 0)
            .count();
        assert_eq!(even, 2);
        let layout = CombinedLayout::of(&p).unwrap();
        assert_eq!((layout.m, layout.n, layout.len()), (0, 1, 1));
        let slot = &layout.slots()[0];
        assert_eq!(slot.top.len(), 2 + 2 * n);
        assert_eq!(slot.bottom.len(), 2 + 2 * m);
        let hats: Vec<(Pair, SpinParity)> = layout
            .choices()
            .map(|c| {
                let hat = prefix_insert(&p, "x", c[0].0, c[0].1).unwrap();
                let s = spin_checked(&hat);
                assert_ne!(s, SpinParity::Undefined);
                (hat, s)
            })
            .collect();
        assert_eq!(hats.len(), slot.top.len() * slot.bottom.len());
        let spins: Vec<SpinParity> = hats.iter().map(|h| h.1).collect();
        assert!(spins.contains(&SpinParity::Zero) && spins.contains(&SpinParity::One));
        for (h1, s1) in &hats {
            for (h2, s2) in &hats {
                let nus = related_by_centralizer(&p, h1, h2);
                assert!(!nus.is_empty(), "{h1} vs {h2}");
                for nu in nus {
                    assert_eq!(nu.is_even(), s1 == s2, "{h1} vs {h2} via {nu}");
                    checked += 1;
                }
            }
        }
    }
    checked
}

// Generators of Sym and Alt.

fn cycle(alphabet: &std::sync::Arc<Alphabet>, idx: &[usize]) -> Permutation {
    let letters: Vec<Letter> = idx.iter().map(|&i| Letter::new(i)).collect();
    Permutation::cycle(alphabet, &letters).unwrap()
}

/// `⟨(1..N−1), (2..N)⟩` is Alt for even N and Sym for odd N.
pub fn overlapping_long_cycles(max_n: usize) -> usize {
    for n in 3..=max_n {
        let a = Alphabet::standard(n).unwrap();
        let nu1 = cycle(&a, &(0..n - 1).collect::<Vec<_>>());
        let nu2 = cycle(&a, &(1..n).collect::<Vec<_>>());
        let want = if n % 2 == 0 {
            GroupClassification::Alternating
        } else {
            GroupClassification::Symmetric
        };
        assert_eq!(classify_generated(&a, &[nu1, nu2]).unwrap(), want, "n={n}");
    }
    max_n - 2
}

/// `⟨(1..N), (1,2)⟩ = Sym`, and for odd N `⟨(1..N), (1,2)(1..N)(1,2)⟩ = Alt`.
pub fn long_cycle_with_transposition(max_n: usize) -> usize {
    let mut checked = 0;
    for n in 2..=max_n {
        let a = Alphabet::standard(n).unwrap();
        let long = cycle(&a, &(0..n).collect::<Vec<_>>());
        let t = cycle(&a, &[0, 1]);
        assert_eq!(
            classify_generated(&a, &[long.clone(), t.clone()]).unwrap(),
            GroupClassification::Symmetric,
            "n={n}"
        );
        checked += 1;
        if n % 2 == 1 && n >= 3 {
            let conj = t.compose(&long).unwrap().compose(&t).unwrap();
            assert_eq!(
                classify_generated(&a, &[long, conj]).unwrap(),
                GroupClassification::Alternating,
                "n={n}"
            );
            checked += 1;
        }
    }
    checked
}

/// `⟨Alt B, Alt C⟩ = Alt(B ∪ C)` and `⟨Alt B, Sym C⟩ = Sym(B ∪ C)` for
/// overlapping B, C of at least three letters. B = {0..k} and C = {j..n}:
/// up to relabeling only |B \ C|, |B ∩ C| and |C \ B| matter, so intervals
/// cover every case.
pub fn overlapping_alphabets_combine(max_n: usize) -> usize {
    let mut cases = 0;
    for n in 4..=max_n {
        let a = Alphabet::standard(n).unwrap();
        for k in 2..n - 1 {
            for j in 1..=k {
                if n - j < 3 {
                    continue;
                }
                let b: Vec<usize> = (0..=k).collect();
                let c: Vec<usize> = (j..n).collect();
                let alt = |s: &[usize]| -> Vec<Permutation> {
                    (2..s.len())
                        .map(|i| cycle(&a, &[s[0], s[1], s[i]]))
                        .collect()
                };
                let sym = |s: &[usize]| vec![cycle(&a, &s[..2]), cycle(&a, s)];
                let both_alt: Vec<_> = alt(&b).into_iter().chain(alt(&c)).collect();
                let alt_sym: Vec<_> = alt(&b).into_iter().chain(sym(&c)).collect();
                assert_eq!(
                    classify_generated(&a, &both_alt).unwrap(),
                    GroupClassification::Alternating,
                    "n={n} B={b:?} C={c:?}"
                );
                assert_eq!(
                    classify_generated(&a, &alt_sym).unwrap(),
                    GroupClassification::Symmetric,
                    "n={n} B={b:?} C={c:?}"
                );
                cases += 1;
            }
        }
    }
    cases
}

// Block-moving searches.

/// A labeled right-induction path from `source` to `target`, checked by
/// replaying it.
pub fn found(source: &str, target: &str) -> Vec<Move> {
    let p = pair(source);
    let q = Pair::parse_with(p.alphabet(), target).unwrap();
    match find_pattern(&p, &q, Flavor::Right, Budget::default()).unwrap() {
        PatternSearch::Found(path) => {
            assert_eq!(p.apply_all(&path).unwrap(), q);
            path
        }
        other => panic!("{source} -> {target}: {other:?}"),
    }
}

/// 2-swap blocks moved past a reversal. The stated targets are out of reach
/// as labeled pairs since the marked structure differs; their shape is
/// reachable, and so is the pair the switch-move argument lands on.
pub fn twos_past_reversal() -> usize {
    let cases = [
        (
            "a b d1 e1 c z | z c b e1 d1 a",
            "a e1 c b d1 z | z c e1 d1 b a",
            "a c d1 b e1 z | z d1 c e1 b a",
        ),
        (
            "a b d1 e1 d2 e2 c z | z c b e1 d1 e2 d2 a",
            "a e2 c e1 d2 b d1 z | z c e2 d2 e1 d1 b a",
            "a d2 d1 c e1 b e2 z | z d1 d2 e1 c e2 b a",
        ),
    ];
    for (source, literal, reached) in cases {
        let p = pair(source);
        let q = Pair::parse_with(p.alphabet(), literal).unwrap();
        assert_eq!(
            find_pattern(&p, &q, Flavor::Right, Budget::default()).unwrap(),
            PatternSearch::NotFound
        );
        assert_ne!(marked_structure(&p).unwrap(), marked_structure(&q).unwrap());
        let m = rauzykit::classes::find_pattern_up_to_renaming(
            &p,
            &q,
            Flavor::Right,
            Budget::default(),
        )
        .unwrap()
        .expect("shape reachable");
        assert_eq!(m.pair.to_nonlabeled(), q.to_nonlabeled());
        assert_eq!(p.apply_all(&m.path).unwrap(), m.pair);
        found(source, reached);
    }
    cases.len()
}

/// Path lengths of the remaining searches, in a fixed order: gather after a
/// reversal (n = 1, 2), past a four-reversal (n = 1, 2), into a
/// three-reversal (n = 1).
pub fn block_search_lengths() -> Vec<usize> {
    [
        (
            "a b d1 e1 c z | z e1 d1 c b a",
            "a e1 c b d1 z | z c e1 d1 b a",
        ),
        (
            "a b d1 e1 d2 e2 c z | z e1 d1 e2 d2 c b a",
            "a e2 c e1 d2 b d1 z | z c e2 d2 e1 d1 b a",
        ),
        (
            "a b c e1 f1 d z | z f1 e1 d c b a",
            "a f1 d b c e1 z | z d f1 e1 c b a",
        ),
        (
            "a b c e1 f1 e2 f2 d z | z f1 e1 f2 e2 d c b a",
            "a f2 d f1 e2 b c e1 z | z d f2 e2 f1 e1 c b a",
        ),
        (
            "a b c d e g1 h1 f z | z d h1 g1 c b f e a",
            "a b c d h1 f e g1 z | z d c b f h1 g1 e a",
        ),
    ]
    .iter()
    .map(|(s, t)| found(s, t).len())
    .collect()
}
