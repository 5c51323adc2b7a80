//! Acceptance criteria. Each criterion runs at its stated tolerance and
//! prints one PASS/FAIL line; the test fails if any criterion fails.
//!
//! Run with `cargo test -p synlat-core --test acceptance -- --nocapture`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use synlat_core::oracle::{
    lattice_maps, monoid_maps, oracle_lattice_congruent, oracle_monoid_congruent, oracle_semiring_congruent,
    random_lattice_form, random_meet_form, random_regex, random_term, saturated_elements, semiring_maps, Level,
    OracleConfig,
};
use synlat_core::term::{finite_language_table, lambda_in_action, Signature};
use synlat_core::{
    build_lattice_automaton, build_meet_automaton, check_lattice_algebra_axioms, check_reversibility_identity, embed,
    eval_term, find_forbidden_configuration, normalize_lattice, parse_term, separating_language,
    syntactic_lattice_algebra, syntactic_monoid, syntactic_semiring, Alphabet, AtomAutomaton, AtomSet, Budgets, Dfa,
    Error, Language, LatticeForm, ProfileTable, StateId, Word,
};

struct Outcome {
    id: &'static str,
    name: &'static str,
    result: Result<String, String>,
    elapsed: Duration,
    limit: Duration,
}

fn run(id: &'static str, name: &'static str, limit: Duration, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    Outcome { id, name, result, elapsed: start.elapsed(), limit }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

fn lang(regex: &str) -> Language {
    Language::new(regex, "ab", &Budgets::default()).unwrap()
}

fn regex_dfa(regex: &str) -> Dfa {
    lang(regex).dfa
}

/// Short names of the languages that appear as states, with regexes.
const NAMES: [(&str, &str); 7] =
    [("L", "a+b+"), ("K", "a*b+"), ("0", "%0"), ("b*", "b*"), ("b+", "b+"), ("A*", "(a|b)*"), ("Kl", "a*b+|%e")];

fn named_language(name: &str) -> Dfa {
    let regex = NAMES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("unknown name {name}")).1;
    regex_dfa(regex)
}

/// Index of the automaton state whose language is the named one.
fn state_named(pt: &ProfileTable, states: &[AtomSet], name: &str) -> Option<usize> {
    let target = named_language(name);
    states.iter().position(|x| pt.language_dfa(x).equivalent(&target).unwrap())
}

fn dfa_state_named(dfa: &Dfa, name: &str) -> Option<StateId> {
    let target = named_language(name);
    dfa.states().find(|&q| dfa.residual(q).equivalent(&target).unwrap())
}

fn automaton_names(pt: &ProfileTable, aut: &AtomAutomaton, names: &[&str]) -> Result<BTreeMap<usize, String>, String> {
    let mut out = BTreeMap::new();
    for &n in names {
        let i = state_named(pt, aut.states(), n).ok_or_else(|| format!("no state with language {n}"))?;
        out.insert(i, n.to_string());
    }
    ensure!(out.len() == names.len(), "states not distinct");
    Ok(out)
}

/// Undirected cover edges as unordered name pairs.
fn undirected(edges: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    edges
        .iter()
        .map(|&(x, y)| if x < y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) })
        .collect()
}

fn covers_by_name(aut: &AtomAutomaton, names: &BTreeMap<usize, String>) -> BTreeSet<(String, String)> {
    let pairs: Vec<(&str, &str)> =
        aut.order().covers.iter().map(|&(i, j)| (names[&i].as_str(), names[&j].as_str())).collect();
    undirected(&pairs)
}

fn transitions_by_name(aut: &AtomAutomaton, names: &BTreeMap<usize, String>) -> BTreeSet<(String, char, String)> {
    let mut out = BTreeSet::new();
    for (&i, n) in names {
        for (a, &c) in aut.alphabet().letters().iter().enumerate() {
            out.insert((n.clone(), c, names[&aut.step(i, a)].clone()));
        }
    }
    out
}

fn edges(list: &[(&str, char, &str)]) -> BTreeSet<(String, char, String)> {
    list.iter().map(|&(p, c, q)| (p.to_string(), c, q.to_string())).collect()
}

const DFA_EDGES: [(&str, char, &str); 8] = [
    ("0", 'a', "0"),
    ("0", 'b', "0"),
    ("K", 'a', "K"),
    ("b*", 'b', "b*"),
    ("L", 'b', "0"),
    ("L", 'a', "K"),
    ("K", 'b', "b*"),
    ("b*", 'a', "0"),
];

fn criterion_1() -> Result<String, String> {
    let l = lang("a+b+");
    let dfa = &l.dfa;
    ensure!(dfa.num_states() == 4, "{} states", dfa.num_states());
    let mut names = BTreeMap::new();
    for n in ["L", "K", "0", "b*"] {
        let q = dfa_state_named(dfa, n).ok_or_else(|| format!("no residual {n}"))?;
        names.insert(q, n.to_string());
    }
    ensure!(names.len() == 4, "residuals not distinct");
    ensure!(names[&dfa.initial()] == "L", "initial state is {}", names[&dfa.initial()]);
    let finals: Vec<&str> = dfa.finals().map(|q| names[&q].as_str()).collect();
    ensure!(finals == ["b*"], "finals {finals:?}");
    let mut got = BTreeSet::new();
    for q in dfa.states() {
        for (a, &c) in dfa.alphabet().letters().iter().enumerate() {
            got.insert((names[&q].clone(), c, names[&dfa.step(q, a)].clone()));
        }
    }
    ensure!(got == edges(&DFA_EDGES), "transitions {got:?}");
    Ok("4 states L, K, 0, b*; final b*; 8 edges".into())
}

fn criterion_2() -> Result<String, String> {
    let l = lang("a+b+");
    let m = build_meet_automaton(&l.table, &l.dfa, Budgets::default().states).map_err(|e| e.to_string())?;
    ensure!(m.num_states() == 6, "{} states", m.num_states());
    let names = automaton_names(&l.table, &m, &["L", "K", "0", "b*", "b+", "A*"])?;
    let finals: BTreeSet<&str> = m.finals().iter().map(|i| names[i].as_str()).collect();
    ensure!(finals == BTreeSet::from(["b*", "A*"]), "finals {finals:?}");
    let expected = undirected(&[("L", "0"), ("L", "K"), ("0", "b+"), ("K", "b+"), ("K", "A*"), ("b+", "b*"), ("A*", "b*")]);
    let got = covers_by_name(&m, &names);
    ensure!(got == expected, "covers {got:?}");
    let mut meet_edges = edges(&DFA_EDGES);
    meet_edges.extend(edges(&[("A*", 'a', "A*"), ("A*", 'b', "A*"), ("b+", 'a', "0"), ("b+", 'b', "b*")]));
    ensure!(transitions_by_name(&m, &names) == meet_edges, "transitions differ");
    Ok("6 states; finals b*, A*; 7 covers; 12 edges".into())
}

fn criterion_3() -> Result<String, String> {
    let l = lang("a+b+");
    let lat = build_lattice_automaton(&l.table, &l.dfa, Budgets::default().states).map_err(|e| e.to_string())?;
    ensure!(lat.num_states() == 7, "{} states", lat.num_states());
    let names = automaton_names(&l.table, &lat, &["L", "K", "0", "b*", "b+", "A*", "Kl"])?;
    let finals: BTreeSet<&str> = lat.finals().iter().map(|i| names[i].as_str()).collect();
    ensure!(finals == BTreeSet::from(["b*", "A*", "Kl"]), "finals {finals:?}");
    let expected = undirected(&[
        ("L", "0"),
        ("L", "K"),
        ("0", "b+"),
        ("K", "b+"),
        ("K", "Kl"),
        ("b+", "b*"),
        ("Kl", "b*"),
        ("Kl", "A*"),
    ]);
    let got = covers_by_name(&lat, &names);
    ensure!(got == expected, "covers {got:?}");
    let mut lattice_edges = edges(&DFA_EDGES);
    lattice_edges.extend(edges(&[
        ("A*", 'a', "A*"),
        ("A*", 'b', "A*"),
        ("b+", 'a', "0"),
        ("b+", 'b', "b*"),
        ("Kl", 'a', "K"),
        ("Kl", 'b', "b*"),
    ]));
    ensure!(transitions_by_name(&lat, &names) == lattice_edges, "transitions differ");
    Ok("7 states; finals b*, A*, K^λ; 8 covers; 14 edges".into())
}

/// Semiring of a+b+: rows by term, columns L, K, b*, b+, A*, ∅.
const SEMIRING_ROWS: [(&str, [&str; 6]); 11] = [
    ("%e", ["L", "K", "b*", "b+", "A*", "0"]),
    ("a", ["K", "K", "0", "0", "A*", "0"]),
    ("b", ["0", "b*", "b*", "b*", "A*", "0"]),
    ("ab", ["b*", "b*", "0", "0", "A*", "0"]),
    ("ba", ["0", "0", "0", "0", "A*", "0"]),
    ("T", ["A*", "A*", "A*", "A*", "A*", "A*"]),
    ("%e^a", ["L", "K", "0", "0", "A*", "0"]),
    ("%e^b", ["0", "b+", "b*", "b+", "A*", "0"]),
    ("%e^ab", ["0", "b+", "0", "0", "A*", "0"]),
    ("a^ab", ["b+", "b+", "0", "0", "A*", "0"]),
    ("b^ab", ["0", "b*", "0", "0", "A*", "0"]),
];

/// Semiring order of a+b+, lower element first.
const SEMIRING_COVERS: [(&str, &str); 17] = [
    ("ba", "%e^ab"),
    ("%e^ab", "%e^a"),
    ("%e^ab", "%e^b"),
    ("%e^ab", "a^ab"),
    ("%e^ab", "b^ab"),
    ("%e", "T"),
    ("a", "T"),
    ("b", "T"),
    ("ab", "T"),
    ("%e^a", "%e"),
    ("%e^a", "a"),
    ("b^ab", "b"),
    ("b^ab", "ab"),
    ("%e^b", "%e"),
    ("%e^b", "b"),
    ("a^ab", "a"),
    ("a^ab", "ab"),
];

fn criterion_4() -> Result<String, String> {
    let l = lang("a+b+");
    let s = syntactic_semiring(&l.table, &l.dfa, &Budgets::default()).map_err(|e| e.to_string())?;
    ensure!(s.len() == 11, "{} elements", s.len());
    let columns = ["L", "K", "b*", "b+", "A*", "0"];
    let col: Vec<usize> = columns
        .iter()
        .map(|n| state_named(&l.table, s.automaton().states(), n).ok_or_else(|| format!("no state {n}")))
        .collect::<Result<_, _>>()?;
    let mut index = BTreeMap::new();
    for (row, cells) in SEMIRING_ROWS {
        let term = parse_term(row, &ab()).map_err(|e| e.to_string())?;
        let form = synlat_core::normalize_semiring(&term).map_err(|e| e.to_string())?;
        let e = s.element_of(&l.table, &form).map_err(|e| e.to_string())?.ok_or_else(|| format!("{row} missing"))?;
        for (k, cell) in cells.iter().enumerate() {
            let got = s.state_image(e, col[k]);
            ensure!(
                got == col[columns.iter().position(|c| c == cell).unwrap()],
                "{row} on {}: {}",
                columns[k],
                s.automaton().label(got)
            );
        }
        index.insert(row, e);
    }
    let distinct: BTreeSet<usize> = index.values().copied().collect();
    ensure!(distinct.len() == 11, "table rows name {} elements", distinct.len());
    let expected: BTreeSet<(usize, usize)> = SEMIRING_COVERS.iter().map(|(x, y)| (index[x], index[y])).collect();
    let got: BTreeSet<(usize, usize)> = s.order().covers.iter().copied().collect();
    ensure!(got == expected, "Hasse covers differ: {got:?}");
    Ok("11 elements; 66 cells; 17 covers".into())
}

/// Lattice algebra of a+b+: rows by term as printed, columns L, K, b*.
const LATTICE_ROWS: [(&str, [&str; 3]); 22] = [
    ("%e", ["L", "K", "b*"]),
    ("a", ["K", "K", "0"]),
    ("b", ["0", "b*", "b*"]),
    ("ab", ["b*", "b*", "0"]),
    ("ba", ["0", "0", "0"]),
    ("T", ["A*", "A*", "A*"]),
    ("%e^a", ["L", "K", "0"]),
    ("%e^b", ["0", "b+", "b*"]),
    ("%e^ab", ["0", "b+", "0"]),
    ("a^ab", ["b+", "b+", "0"]),
    ("b^ab", ["0", "b*", "0"]),
    ("(%e^a)v(b^ab)", ["L", "Kl", "0"]),
    ("(%e^a)vb", ["L", "Kl", "b*"]),
    ("(%e^a)vab", ["Kl", "Kl", "0"]),
    ("(%e^b)v(a^ab)", ["b+", "b+", "b*"]),
    ("(%e^b)va", ["K", "Kl", "b*"]),
    ("(%e^b)vab", ["b*", "b*", "b*"]),
    ("(a^ab)v(b^ab)", ["b+", "b*", "0"]),
    ("(a^ab)v%e", ["K", "K", "b*"]),
    ("(a^ab)vb", ["b+", "b*", "b*"]),
    ("(b^ab)va", ["K", "Kl", "0"]),
    ("%evab", ["Kl", "Kl", "b*"]),
];

/// The printed row whose label does not evaluate to its cells, and the
/// term that does.
const MISLABELED_ROW: (&str, &str) = ("(%e^b)va", "avb");

fn criterion_5() -> Result<String, String> {
    let l = lang("a+b+");
    let pt = &l.table;
    let alg = syntactic_lattice_algebra(pt, &l.dfa, &Budgets::default()).map_err(|e| e.to_string())?;
    ensure!(alg.len() == 22, "{} elements", alg.len());
    let aut = alg.automaton();
    let names = automaton_names(pt, aut, &["L", "K", "0", "b*", "b+", "A*", "Kl"])?;
    let dfa_cols: Vec<StateId> = ["L", "K", "b*"].iter().map(|n| dfa_state_named(&l.dfa, n).unwrap()).collect();
    let row_of = |e: usize| -> [String; 3] {
        let im = &alg.element(e).images;
        [0, 1, 2].map(|k| names[&im[dfa_cols[k].index()]].clone())
    };
    let engine_rows: BTreeSet<[String; 3]> = (0..alg.len()).map(row_of).collect();
    let printed_rows: BTreeSet<[String; 3]> = LATTICE_ROWS.iter().map(|(_, c)| c.map(String::from)).collect();
    ensure!(printed_rows.len() == 22, "printed rows are not distinct");
    ensure!(
        engine_rows == printed_rows,
        "rows differ: {:?}",
        engine_rows.symmetric_difference(&printed_rows).collect::<Vec<_>>()
    );
    let element = |text: &str| -> Result<usize, String> {
        let form =
            normalize_lattice(&parse_term(text, &ab()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        alg.element_of(&form).map_err(|e| e.to_string())?.ok_or_else(|| format!("{text} missing"))
    };
    for (label, cells) in LATTICE_ROWS {
        let expect = cells.map(String::from);
        if label == MISLABELED_ROW.0 {
            ensure!(
                row_of(element(MISLABELED_ROW.1)?) == expect,
                "{} does not give the printed row",
                MISLABELED_ROW.1
            );
            ensure!(row_of(element(label)?) == row_of(element("(a^ab)v%e")?), "{label} is not (a^ab)v%e");
            continue;
        }
        ensure!(row_of(element(label)?) == expect, "{label}: {:?}", row_of(element(label)?));
    }
    for (lhs, rhs) in [("%e", "(%e^a)v(%e^b)"), ("a", "(%e^a)v(a^ab)"), ("b", "(%e^b)v(b^ab)")] {
        ensure!(element(lhs)? == element(rhs)?, "{lhs} != {rhs}");
    }
    ensure!(element("%e^ab")? == element("a^b")?, "λ∧ab and a∧b differ");
    let kl = aut.state(names.iter().find(|(_, n)| *n == "Kl").map(|(&i, _)| i).unwrap());
    let act = |t: &str| -> Result<String, String> {
        let x = eval_term(pt, kl, &parse_term(t, &ab()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let i = aut.index_of(&x).ok_or("image is not a state")?;
        Ok(names[&i].clone())
    };
    ensure!(act("%e^ab")? == "b*", "K^λ∘(λ∧ab) = {}", act("%e^ab")?);
    ensure!(act("a^b")? == "b+", "K^λ∘(a∧b) = {}", act("a^b")?);
    Ok(format!("22 elements; 66 cells; row '{}' carries the cells of {}", MISLABELED_ROW.0, MISLABELED_ROW.1))
}

fn criterion_6() -> Result<String, String> {
    let language = [Word::new("aa"), Word::new("bb")];
    let alphabet = ab();
    let t1 = parse_term("a(avb)^b(avb)", &alphabet).map_err(|e| e.to_string())?;
    let t2 = parse_term("(a^b)(avb)", &alphabet).map_err(|e| e.to_string())?;
    ensure!(lambda_in_action(&alphabet, &language, &t1).map_err(|e| e.to_string())?, "λ ∉ L∘(a(a∨b) ∧ b(a∨b))");
    let pt = finite_language_table(&alphabet, &language).map_err(|e| e.to_string())?;
    let l = pt.residual_atoms(pt.dfa().initial());
    let image = eval_term(&pt, &l, &t2).map_err(|e| e.to_string())?;
    ensure!(image.is_empty(), "L∘((a∧b)(a∨b)) is not empty");
    Ok("λ ∈ L∘(a(a∨b) ∧ b(a∨b)); L∘((a∧b)(a∨b)) = ∅".into())
}

/// Random regexes that compile within default budgets.
fn corpus(seed: u64, count: usize, max_letters: usize) -> Vec<(String, Language)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let letters: String = "abc".chars().take(rng.random_range(1..=max_letters)).collect();
        let alphabet = Alphabet::new(&letters).unwrap();
        let ast = random_regex(&mut rng, &alphabet, 8);
        let text = ast.root.to_string();
        match Language::new(&text, &letters, &Budgets::default()) {
            Ok(l) => out.push((format!("{text} over {letters}"), l)),
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => panic!("{text}: {e}"),
        }
    }
    out
}

fn reversible(l: &Language) -> Result<bool, String> {
    let m = syntactic_monoid(&l.dfa, Budgets::default().elements).map_err(|e| e.to_string())?;
    let forbidden = find_forbidden_configuration(&l.dfa, &m);
    let identity = check_reversibility_identity(&m, &l.table, &l.dfa, Budgets::default().quadruples);
    ensure!(forbidden.is_some() == identity.is_some(), "{}: methods disagree", l.regex);
    Ok(forbidden.is_none())
}

fn criterion_7() -> Result<String, String> {
    let langs = corpus(7, 200, 3);
    let mut disagreements = Vec::new();
    let mut verdicts = [0usize; 2];
    for (name, l) in &langs {
        match reversible(l) {
            Ok(r) => verdicts[r as usize] += 1,
            Err(_) => disagreements.push(name.clone()),
        }
    }
    ensure!(disagreements.is_empty(), "{} disagreements, first {}", disagreements.len(), disagreements[0]);
    ensure!(!reversible(&lang("a+b+"))?, "a+b+ reported reversible");
    ensure!(reversible(&lang("a*"))?, "a* reported not reversible");
    ensure!(reversible(&lang("%0"))?, "%0 reported not reversible");
    Ok(format!("200 regexes, 0 disagreements ({} reversible, {} not)", verdicts[1], verdicts[0]))
}

fn random_word(rng: &mut StdRng, alphabet: &Alphabet, max_len: usize) -> Word {
    let n = rng.random_range(0..=max_len);
    Word::new(&(0..n).map(|_| alphabet.letter(rng.random_range(0..alphabet.len()))).collect::<String>())
}

fn criterion_8() -> Result<String, String> {
    let langs = corpus(8, 30, 2);
    let cfg = OracleConfig { max_word_len: 1, ..OracleConfig::default() };
    let mut rng = StdRng::seed_from_u64(88);
    for (name, l) in &langs {
        let (pt, dfa) = (&l.table, &l.dfa);
        let budgets = Budgets::default();
        let m = syntactic_monoid(dfa, budgets.elements).map_err(|e| e.to_string())?;
        let s = syntactic_semiring(pt, dfa, &budgets).map_err(|e| e.to_string())?;
        let alg = syntactic_lattice_algebra(pt, dfa, &budgets).map_err(|e| e.to_string())?;
        let engine = [monoid_maps(&m, pt), semiring_maps(&s), lattice_maps(&alg)];
        for (level, maps) in [Level::Monoid, Level::Semiring, Level::Lattice].into_iter().zip(&engine) {
            let saturated = saturated_elements(pt, dfa, level, &cfg, 12).map_err(|e| e.to_string())?;
            let (_, oracle) = saturated.ok_or_else(|| format!("{name}: {level:?} enumeration did not saturate"))?;
            ensure!(&oracle == maps, "{name}: {level:?} oracle has {} elements, engine {}", oracle.len(), maps.len());
        }
        ensure!(m.len() <= s.len() && s.len() <= alg.len(), "{name}: sizes {} {} {}", m.len(), s.len(), alg.len());
        let alphabet = l.alphabet().clone();
        for _ in 0..100 {
            let (u, v) = (random_word(&mut rng, &alphabet, 4), random_word(&mut rng, &alphabet, 4));
            let same = m.element_of_word(&u.as_string()).unwrap() == m.element_of_word(&v.as_string()).unwrap();
            ensure!(oracle_monoid_congruent(pt, dfa, &u, &v).unwrap() == same, "{name}: monoid {u} {v}");
            let (u, v) = (random_meet_form(&mut rng, &alphabet, 3, 3), random_meet_form(&mut rng, &alphabet, 3, 3));
            let same = s.element_of(pt, &u).unwrap() == s.element_of(pt, &v).unwrap();
            ensure!(oracle_semiring_congruent(pt, dfa, &u, &v).unwrap() == same, "{name}: semiring {u} {v}");
            let (u, v) =
                (random_lattice_form(&mut rng, &alphabet, 3, 2, 3), random_lattice_form(&mut rng, &alphabet, 3, 2, 3));
            let same = alg.element_of(&u).unwrap() == alg.element_of(&v).unwrap();
            ensure!(oracle_lattice_congruent(pt, dfa, &u, &v).unwrap() == same, "{name}: lattice {u} {v}");
        }
    }
    Ok("30 regexes; element sets and congruences agree at all three levels".into())
}

fn criterion_9() -> Result<String, String> {
    let alphabet = ab();
    let mut rng = StdRng::seed_from_u64(9);
    for (_, l) in corpus(90, 10, 2).iter().filter(|(_, l)| l.alphabet().len() == 2) {
        let lat = build_lattice_automaton(&l.table, &l.dfa, Budgets::default().states).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let t = random_term(&mut rng, &alphabet, 8, Signature::Lattice);
            let n = embed(&normalize_lattice(&t).map_err(|e| e.to_string())?);
            for x in lat.states() {
                ensure!(
                    eval_term(&l.table, x, &t).unwrap() == eval_term(&l.table, x, &n).unwrap(),
                    "{t} vs {n} on {}",
                    l.regex
                );
            }
        }
    }
    for _ in 0..500 {
        let n1 = random_lattice_form(&mut rng, &alphabet, 3, 3, 3);
        let n2 = random_lattice_form(&mut rng, &alphabet, 3, 3, 3);
        if n1 == n2 {
            continue;
        }
        let sep = separating_language(&n1, &n2).map_err(|e| e.to_string())?;
        let d1 = lambda_in_action(&alphabet, &sep, &embed(&n1)).unwrap();
        let d2 = lambda_in_action(&alphabet, &sep, &embed(&n2)).unwrap();
        ensure!(d1 != d2, "{n1} and {n2} not separated by {sep:?}");
    }
    let mut languages: Vec<(String, Language)> =
        ["a+b+", "%0", "a*", "%e", "(ab|ba)*", "(a|b)*aba"].iter().map(|r| (r.to_string(), lang(r))).collect();
    languages.extend(corpus(99, 20, 2));
    let mut failures = Vec::new();
    for (name, l) in &languages {
        let alg = syntactic_lattice_algebra(&l.table, &l.dfa, &Budgets::default()).map_err(|e| e.to_string())?;
        let report = check_lattice_algebra_axioms(&alg);
        if !report.is_ok() {
            failures.push(format!("{name}: {:?} ({} violations)", report.failing_axioms(), report.total));
        }
    }
    ensure!(
        failures.is_empty(),
        "normalization sound and complete; axioms fail on {}/{} algebras: {}",
        failures.len(),
        languages.len(),
        failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
    );
    Ok(format!("normalization sound and complete; axioms hold on {} algebras", languages.len()))
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let outcomes = [
        run("1", "canonical automaton of a+b+", s(1), criterion_1),
        run("2", "meet automaton of a+b+", s(1), criterion_2),
        run("3", "lattice automaton of a+b+", s(1), criterion_3),
        run("4", "syntactic semiring of a+b+", s(1), criterion_4),
        run("5", "syntactic lattice algebra of a+b+", s(5), criterion_5),
        run("6", "right distributivity counterexample", s(1), criterion_6),
        run("7", "reversibility equivalence", s(300), criterion_7),
        run("8", "oracle equivalence", s(600), criterion_8),
        run("9", "free-structure properties and axioms", s(300), criterion_9),
    ];
    let mut failed = Vec::new();
    for o in &outcomes {
        let (ok, detail) = match &o.result {
            Ok(d) if o.elapsed <= o.limit => (true, d.clone()),
            Ok(d) => (false, format!("{d}; exceeded {:?}", o.limit)),
            Err(e) => (false, e.clone()),
        };
        println!(
            "{} criterion {}: {} ({:.3}s) {}",
            if ok { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed.as_secs_f64(),
            detail
        );
        if !ok {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

/// Lattice-algebra order of a+b+ as drawn: 22 nodes, some labeled by a
/// term and the rest `?`, and 42 cover edges.
#[test]
fn lattice_algebra_order_matches_drawing() {
    const NODES: [(&str, &str); 22] = [
        ("p1", "%e^a"),
        ("p2", "%e^b"),
        ("p3", "a^ab"),
        ("d1", "%e"),
        ("d2", "a"),
        ("d3", "?"),
        ("v", "?"),
        ("s2", "%e^ab"),
        ("s1", "_"),
        ("pp1", "?"),
        ("pp2", "b"),
        ("pp3", "?"),
        ("ps", "b^ab"),
        ("pd1", "?"),
        ("pd2", "?"),
        ("pd3", "?"),
        ("pv", "?"),
        ("dp3", "ab"),
        ("dd2", "?"),
        ("dd3", "?"),
        ("dv", "?"),
        ("vvv", "T"),
    ];
    const EDGES: [(&str, &str); 42] = [
        ("s1", "s2"),
        ("s2", "p1"),
        ("s2", "p2"),
        ("s2", "p3"),
        ("v", "d1"),
        ("v", "d2"),
        ("v", "d3"),
        ("p1", "d1"),
        ("p1", "d2"),
        ("p3", "d3"),
        ("p2", "d1"),
        ("p2", "d3"),
        ("p3", "d2"),
        ("ps", "pp1"),
        ("ps", "pp2"),
        ("ps", "pp3"),
        ("pv", "pd1"),
        ("pv", "pd2"),
        ("pv", "pd3"),
        ("pp1", "pd1"),
        ("pp1", "pd2"),
        ("pp3", "pd3"),
        ("pp2", "pd1"),
        ("pp2", "pd3"),
        ("pp3", "pd2"),
        ("s2", "ps"),
        ("p1", "pp1"),
        ("p2", "pp2"),
        ("p3", "pp3"),
        ("d1", "pd1"),
        ("d2", "pd2"),
        ("d3", "pd3"),
        ("v", "pv"),
        ("dp3", "dd2"),
        ("dp3", "dd3"),
        ("dd3", "dv"),
        ("dd2", "dv"),
        ("dv", "vvv"),
        ("pp3", "dp3"),
        ("pd2", "dd2"),
        ("pd3", "dd3"),
        ("pv", "dv"),
    ];
    let l = lang("a+b+");
    let alg = syntactic_lattice_algebra(&l.table, &l.dfa, &Budgets::default()).unwrap();
    let node = |n: &str| NODES.iter().position(|(x, _)| *x == n).unwrap();
    let fig: BTreeSet<(usize, usize)> =
        EDGES.iter().map(|&(x, y)| (node(x).min(node(y)), node(x).max(node(y)))).collect();
    let engine: Vec<(usize, usize)> = alg.order().covers.clone();
    assert_eq!(fig.len(), engine.len());
    let fixed: Vec<Option<usize>> = NODES
        .iter()
        .map(|(_, label)| {
            (*label != "?").then(|| {
                let form: LatticeForm = normalize_lattice(&parse_term(label, &ab()).unwrap()).unwrap();
                alg.element_of(&form).unwrap().unwrap()
            })
        })
        .collect();
    // label-preserving isomorphism of cover graphs; equal edge counts make
    // an injective edge map a bijection
    let adj: BTreeSet<(usize, usize)> = engine.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
    let mut assignment: Vec<Option<usize>> = fixed.clone();
    fn extend(
        i: usize,
        assignment: &mut Vec<Option<usize>>,
        fig: &BTreeSet<(usize, usize)>,
        adj: &BTreeSet<(usize, usize)>,
        fixed: &[Option<usize>],
        n: usize,
    ) -> bool {
        if i == assignment.len() {
            return fig.iter().all(|&(x, y)| adj.contains(&(assignment[x].unwrap(), assignment[y].unwrap())));
        }
        let candidates: Vec<usize> = match fixed[i] {
            Some(e) => vec![e],
            None => (0..n).filter(|e| !assignment.contains(&Some(*e))).collect(),
        };
        for e in candidates {
            assignment[i] = Some(e);
            let consistent = fig.iter().all(|&(x, y)| match (assignment[x], assignment[y]) {
                (Some(a), Some(b)) => adj.contains(&(a, b)),
                _ => true,
            });
            if consistent && extend(i + 1, assignment, fig, adj, fixed, n) {
                return true;
            }
            assignment[i] = fixed[i];
        }
        false
    }
    assert!(extend(0, &mut assignment, &fig, &adj, &fixed, alg.len()), "no label-preserving isomorphism");
}
