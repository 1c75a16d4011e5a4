//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use ftree::abelian::{preserves_pairing, smith_normal_form, standard_symplectic, IntMatrix, PairingForm};
use ftree::cli::load_link;
use ftree::finite::FiniteGroup;
use ftree::fundtree::{
    compare_g_images, surjection_census, CompareScope, GImageOptions, GImageReport, HandlebodyLink,
    PeripheralComponent, SurjectionCensus, Verdict,
};
use ftree::group::{simplify, tietze_move, Letter, Presentation, TietzeMove, Word};
use ftree::homs::{count_homomorphisms, plan_search, SearchOptions};
use ftree::tree::{are_isomorphic, are_isomorphic_unbased, canonical_code, BasedTree};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a4() -> FiniteGroup {
    "A4".parse().unwrap()
}

fn census(name: &str) -> Result<SurjectionCensus, String> {
    let path = data(name);
    let link = load_link(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    surjection_census(&link, &a4(), GImageOptions::default()).map_err(|e| e.to_string())
}

/// Peripheral class -> kernel class -> multiplicity, as plain strings.
type Column = BTreeMap<String, BTreeMap<String, usize>>;

fn column(spec: &[(&str, &[(&str, usize)])]) -> Column {
    spec.iter()
        .map(|(p, hs)| (p.to_string(), hs.iter().map(|(h, c)| (h.to_string(), *c)).collect()))
        .collect()
}

fn observed(r: &GImageReport) -> Column {
    r.breakdown(0)
        .into_iter()
        .map(|(p, hs)| (p.to_string(), hs.into_iter().map(|(h, c)| (h.to_string(), c)).collect()))
        .collect()
}

fn tuples(spec: &[(&str, &str)]) -> BTreeMap<Vec<String>, usize> {
    spec.iter().map(|(a, b)| (vec![a.to_string(), b.to_string()], 1)).collect()
}

fn observed_tuples(r: &GImageReport) -> BTreeMap<Vec<String>, usize> {
    r.kernel_tuples().into_iter().map(|(t, c)| (t.iter().map(|l| l.to_string()).collect(), c)).collect()
}

const V4: &str = "Z2xZ2";

fn col_asym_1() -> Column {
    column(&[(V4, &[(V4, 8), ("Z2", 10)]), ("Z3", &[("Z3", 9), ("0", 3)]), ("Z2", &[("Z2", 2), ("0", 1)])])
}

fn col_generic() -> Column {
    column(&[(V4, &[(V4, 8), ("Z2", 9), ("0", 1)]), ("Z3", &[("Z3", 12)]), ("Z2", &[("Z2", 3)])])
}

fn col_asym_3() -> Column {
    column(&[(V4, &[(V4, 8), ("Z2", 10)]), ("Z3", &[("Z3", 12)]), ("Z2", &[("Z2", 2), ("0", 1)])])
}

fn expect_column(c: &SurjectionCensus, id: u32, proper: usize, want: &Column) -> Result<GImageReport, String> {
    let r = c.report(&[id]).map_err(|e| e.to_string())?;
    check(r.proper_orbits == proper, || format!("{} component {id}: {} proper, want {proper}", c.link, r.proper_orbits))?;
    let got = observed(&r);
    check(&got == want, || format!("{} component {id}: {got:?}, want {want:?}", c.link))?;
    Ok(r)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = census("hl1.hld")?;
    for id in [1, 2] {
        let r = c.report(&[id]).map_err(|e| e.to_string())?;
        let dist: BTreeMap<String, usize> = r.peripheral_counts(0).into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let want: BTreeMap<String, usize> = [(V4, 18), ("Z3", 12), ("Z2", 3)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        check(dist == want, || format!("HL1 component {id} peripheral distribution {dist:?}"))?;
    }
    expect_column(&c, 1, 33, &col_asym_1())?;
    expect_column(&c, 2, 33, &col_generic())?;
    let t = start.elapsed();
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("33 proper orbits per component, both columns exact, {:.2?}", t))
}

fn criterion_2() -> Outcome {
    let (c1, c2, c3) = (census("hl1.hld")?, census("hl2.hld")?, census("hl3.hld")?);
    expect_column(&c2, 1, 33, &col_generic())?;
    expect_column(&c2, 2, 33, &col_generic())?;
    expect_column(&c3, 1, 33, &col_generic())?;
    expect_column(&c3, 2, 33, &col_asym_3())?;
    let v = compare_g_images(&c1.profile(1).unwrap(), &c2.profile(1).unwrap(), CompareScope::Kernel).unwrap();
    check(v == Verdict::Distinguished, || format!("HL1 vs HL2 individual: {v}"))?;
    let cols = |c: &SurjectionCensus| (observed(&c.report(&[1]).unwrap()), observed(&c.report(&[2]).unwrap()));
    let (a, b) = cols(&c2);
    check(a == b, || "HL2 columns differ".into())?;
    for c in [&c1, &c3] {
        let (a, b) = cols(c);
        check(a != b, || format!("{} columns coincide", c.link))?;
    }
    Ok("HL2 and HL3 columns exact, HL1 vs HL2 distinguished, symmetry pattern matches".into())
}

fn criterion_3() -> Outcome {
    let want = [
        ("hl1.hld", tuples(&[("Z2", "Z3"), ("Z3", V4), ("Z3", "Z3")])),
        ("hl2.hld", tuples(&[(V4, "Z3"), ("Z3", V4), ("Z3", "Z3")])),
        ("hl3.hld", tuples(&[("Z3", "Z2"), (V4, "Z3"), ("Z3", "Z3")])),
    ];
    let mut profiles = Vec::new();
    for (name, tup) in &want {
        let c = census(name)?;
        let r = c.report(&[1, 2]).map_err(|e| e.to_string())?;
        check(r.proper_orbits == 3, || format!("{name}: {} proper pairs", r.proper_orbits))?;
        let got = observed_tuples(&r);
        check(&got == tup, || format!("{name}: {got:?}"))?;
        profiles.push(c.profile(2).unwrap());
    }
    let v = compare_g_images(&profiles[0], &profiles[2], CompareScope::Kernel).unwrap();
    check(v == Verdict::Indistinguishable, || format!("HL1 vs HL3 2-fold: {v}"))?;
    Ok("pair tables exact, HL1 vs HL3 2-fold indistinguishable".into())
}

fn criterion_4() -> Outcome {
    let c = census("node1.hld")?;
    let sigma = column(&[(V4, &[(V4, 32), ("Z2", 36)]), ("Z3", &[("Z3", 36)]), ("Z2", &[("Z2", 12)]), ("0", &[("0", 4)])]);
    let sigma_prime = column(&[(V4, &[(V4, 32), ("Z2", 24)]), ("Z3", &[("Z3", 52)]), ("Z2", &[("Z2", 24), ("0", 4)])]);
    expect_column(&c, 1, 120, &sigma)?;
    expect_column(&c, 2, 136, &sigma_prime)?;
    Ok("120 and 136 proper orbits, both columns exact".into())
}

fn criterion_5() -> Outcome {
    let shell = BasedTree::from_json(&std::fs::read_to_string(data("toric_shell.json")).unwrap()).unwrap();
    let hopf = BasedTree::from_json(&std::fs::read_to_string(data("hopf_tree.json")).unwrap()).unwrap();
    let start = Instant::now();
    let differ = canonical_code(&shell) != canonical_code(&hopf) && !are_isomorphic(&shell, &hopf);
    let unbased = are_isomorphic_unbased(&shell, &hopf);
    let t = start.elapsed();
    check(differ, || "based codes agree".into())?;
    check(unbased, || "unbased comparison differs".into())?;
    check(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("based codes differ, unbased equal, {t:?}"))
}

// Independent permutation arithmetic for the brute-force oracle.
type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j as usize] = i as u8;
    }
    r
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![];
    let mut p: Perm = (0..n as u8).collect();
    fn rec(k: usize, p: &mut Perm, out: &mut Vec<Perm>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn naive_count(gens: usize, rels: &[Vec<i64>], elems: &[Perm]) -> u64 {
    let id: Perm = (0..elems[0].len() as u8).collect();
    let mut count = 0;
    let mut idx = vec![0usize; gens];
    loop {
        let ok = rels.iter().all(|r| {
            let mut acc = id.clone();
            for &l in r {
                let x = &elems[idx[(l.unsigned_abs() - 1) as usize]];
                acc = compose(&acc, &if l > 0 { x.clone() } else { invert(x) });
            }
            acc == id
        });
        count += ok as u64;
        let mut i = 0;
        while i < gens {
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == gens {
            return count;
        }
    }
}

fn criterion_6() -> Outcome {
    let z6: Vec<Perm> = (0..6u8).map(|k| (0..6u8).map(|i| (i + k) % 6).collect()).collect();
    let s3 = all_perms(3);
    let a4_elems: Vec<Perm> = all_perms(4).into_iter().filter(is_even).collect();
    let groups: [(&str, &[Perm]); 3] = [("Z6", &z6), ("S3", &s3), ("A4", &a4_elems)];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cases = 0;
    for _ in 0..240 {
        let gens = rng.gen_range(1..=2usize);
        let rels: Vec<Vec<i64>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (0..rng.gen_range(1..=12))
                    .map(|_| {
                        let g = rng.gen_range(1..=gens as i64);
                        if rng.gen_bool(0.5) { g } else { -g }
                    })
                    .collect()
            })
            .collect();
        let words: Vec<Word> = rels
            .iter()
            .map(|r| Word::reduce(r.iter().map(|&l| Letter::from_signed(l).unwrap()), gens).unwrap().cyclically_reduced())
            .filter(|w| !w.is_empty())
            .collect();
        let p = Presentation::new(gens, words).unwrap();
        for (name, elems) in groups {
            let g: FiniteGroup = name.parse().unwrap();
            let got = count_homomorphisms(&p, &g, &plan_search(&p), SearchOptions::default()).unwrap();
            let want = naive_count(gens, &rels, elems);
            check(got == want, || format!("{name} on {p}: search {got}, naive {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random cases match the naive count"))
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Word {
    let letters = (0..rng.gen_range(0..=max_len)).map(|_| {
        let g = rng.gen_range(1..=gens as i64);
        Letter::from_signed(if rng.gen_bool(0.5) { g } else { -g }).unwrap()
    });
    Word::reduce(letters, gens).unwrap()
}

fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn det(a: &[Vec<BigInt>]) -> BigInt {
        if a.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..a.len() {
            let minor: Vec<Vec<BigInt>> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &a[0][j] * det(&minor);
            total = if j % 2 == 0 { total + term } else { total - term };
        }
        total
    }
    let mut g = BigInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn transvection(j: &PairingForm, v: &[i64], k: i64) -> IntMatrix {
    let n = v.len();
    let mut m = IntMatrix::identity(n);
    for col in 0..n {
        let mut e = vec![0; n];
        e[col] = 1;
        let c = j.pair(v, &e).unwrap() * k;
        for row in 0..n {
            m[(row, col)] += &c * v[row];
        }
    }
    m
}

fn brute_force_isomorphic(a: &BasedTree, b: &BasedTree) -> bool {
    let n = a.node_count();
    if n != b.node_count() {
        return false;
    }
    all_perms(n - 1).into_iter().any(|p| {
        let f = |v: usize| if v == 0 { 0 } else { p[v - 1] as usize + 1 };
        (1..n).all(|v| b.parent(f(v)) == a.parent(v).map(f) && b.label(f(v)) == a.label(v))
    })
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> BasedTree {
    let mut parents = vec![None];
    let mut labels = vec![None];
    for v in 1..n {
        parents.push(Some(rng.gen_range(0..v)));
        labels.push(Some(rng.gen_range(0..2)));
    }
    BasedTree::from_parts(parents, labels).unwrap()
}

fn shuffled(rng: &mut ChaCha8Rng, t: &BasedTree) -> BasedTree {
    let n = t.node_count();
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    let mut new_id = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i + 1;
    }
    let mut parents = vec![None; n];
    let mut labels = vec![None; n];
    for v in 1..n {
        parents[new_id[v]] = t.parent(v).map(|p| new_id[p]);
        labels[new_id[v]] = t.label(v);
    }
    BasedTree::from_parts(parents, labels).unwrap()
}

fn criterion_7() -> Outcome {
    let mut small: Vec<String> = (1..=24).map(|n| format!("Z{n}")).collect();
    small.extend((1..=12).map(|n| format!("D{n}")));
    small.extend(["A3", "A4", "S3", "S4"].map(String::from));
    for spec in &small {
        let g: FiniteGroup = spec.parse().unwrap();
        for n in 0..=3 {
            let f = Presentation::free_group(n);
            let got = count_homomorphisms(&f, &g, &plan_search(&f), SearchOptions::default()).unwrap();
            check(got == (g.order() as u64).pow(n as u32), || format!("|Hom(F{n}, {spec})| = {got}"))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let moves = [
        TietzeMove::AddRedundantRelator,
        TietzeMove::RemoveRedundantRelator,
        TietzeMove::AddGeneratorWithDefinition,
        TietzeMove::RemoveDefinedGenerator,
    ];
    let targets: Vec<FiniteGroup> = ["S3", "A4"].iter().map(|s| s.parse().unwrap()).collect();
    for _ in 0..100 {
        let gens = rng.gen_range(1..=3);
        let rels = (0..rng.gen_range(0..=2)).map(|_| random_word(&mut rng, gens, 6)).filter(|w| !w.is_empty()).collect();
        let p = Presentation::new(gens, rels).unwrap();
        let mut q = p.clone();
        for _ in 0..rng.gen_range(1..=5) {
            if let Ok(rw) = tietze_move(&q, moves[rng.gen_range(0..4)], rng.gen()) {
                q = rw.presentation;
            }
        }
        let s = simplify(&q).unwrap().presentation;
        for g in &targets {
            let c = |x: &Presentation| count_homomorphisms(x, g, &plan_search(x), SearchOptions::default()).unwrap();
            check(c(&p) == c(&q) && c(&q) == c(&s), || format!("Tietze pipeline changed counts: {p} / {q} / {s}"))?;
        }
    }

    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let f = smith_normal_form(&m);
        check(&(&f.u * &m) * &f.v == f.d, || format!("U M V != D for {m}"))?;
        check(f.u.is_unimodular() && f.v.is_unimodular() && f.d.is_diagonal(), || format!("bad SNF for {m}"))?;
        let diag = f.d.diagonal();
        check(diag.iter().all(|x| !x.is_negative()), || format!("negative diagonal for {m}"))?;
        check(diag.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())), || {
            format!("divisibility fails for {m}")
        })?;
        let mut prod = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            check(prod == minor_gcd(&rows, k + 1), || format!("minor gcd {} for {m}", k + 1))?;
        }
    }

    for g in 1..=3 {
        let j = standard_symplectic(g);
        let mut m = IntMatrix::identity(2 * g);
        for _ in 0..20 {
            let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-2..=2)).collect();
            let t = transvection(&j, &v, rng.gen_range(-1..=1));
            check(preserves_pairing(&t, &j, &j).unwrap(), || "transvection is not symplectic".into())?;
            m = &t * &m;
            check(preserves_pairing(&m, &j, &j).unwrap(), || "product is not symplectic".into())?;
        }
    }

    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let a = random_tree(&mut rng, n);
        let b = if rng.gen_bool(0.5) { shuffled(&mut rng, &a) } else { random_tree(&mut rng, n) };
        let brute = brute_force_isomorphic(&a, &b);
        check(brute == (canonical_code(&a) == canonical_code(&b)), || format!("canonical codes disagree: {a:?} {b:?}"))?;
    }
    Ok("free counts, 100 Tietze pipelines, 200 SNFs, symplectic closure, 300 tree pairs".into())
}

fn perturb(link: &HandlebodyLink, rng: &mut ChaCha8Rng) -> HandlebodyLink {
    let gens = link.ambient().generator_count();
    let comps = link
        .components()
        .iter()
        .map(|c| {
            let u = random_word(rng, gens, 8);
            let longitudes = c
                .longitudes
                .iter()
                .enumerate()
                .map(|(i, l)| l.mul(&c.meridians[i].pow(rng.gen_range(-3..=3))).conjugate_by(&u))
                .collect();
            PeripheralComponent { meridians: c.meridians.iter().map(|m| m.conjugate_by(&u)).collect(), longitudes, ..c.clone() }
        })
        .collect();
    HandlebodyLink::new(link.name.clone(), link.ambient().clone(), comps).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bundled: Vec<String> = std::fs::read_dir(data(""))
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".hld"))
        .collect();
    bundled.sort();
    for name in &bundled {
        let link = load_link(&data(name)).map_err(|e| e.to_string())?;
        let c = surjection_census(&link, &a4(), GImageOptions::default()).unwrap();
        let folds = link.components().len();
        let want: Vec<_> = (1..=folds).map(|k| c.profile(k).unwrap()).collect();
        for trial in 0..50 {
            let moved = perturb(&link, &mut rng);
            let c = surjection_census(&moved, &a4(), GImageOptions::default()).unwrap();
            for k in 1..=folds {
                check(c.profile(k).unwrap() == want[k - 1], || format!("{name} trial {trial} fold {k}"))?;
            }
        }
    }
    Ok(format!("50 trials on each of {} bundled links", bundled.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("HL1 individual A4-image", criterion_1),
        ("HL2 and HL3 individual A4-images", criterion_2),
        ("2-fold A4-images of HL1-HL3", criterion_3),
        ("unequal proper counts of the node-1 link", criterion_4),
        ("toric shell vs Hopf depth trees", criterion_5),
        ("hom search vs naive enumeration", criterion_6),
        ("algebraic property suite", criterion_7),
        ("g-image invariance", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
