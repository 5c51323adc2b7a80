use criterion::{criterion_group, criterion_main, Criterion};
use synlat_core::{
    build_lattice_automaton, build_profile_table, compile_canonical_dfa, is_reversible, parse_regex,
    syntactic_lattice_algebra, syntactic_semiring, Alphabet, Budgets,
};

fn bench_pipeline(c: &mut Criterion) {
    let budgets = Budgets::default();
    let alphabet = Alphabet::new("ab").unwrap();
    let mut group = c.benchmark_group("a/b");
    group.sample_size(10);
    for pattern in ["a+b+", "(a|b)*ab(a|b)", "(ab|ba)*a"] {
        let ast = parse_regex(pattern, &alphabet).unwrap();
        let dfa = compile_canonical_dfa(&ast, budgets.states).unwrap();
        let pt = build_profile_table(&dfa, budgets.profiles).unwrap();
        group.bench_function(format!("compile/{pattern}"), |b| {
            b.iter(|| compile_canonical_dfa(&ast, budgets.states).unwrap())
        });
        group.bench_function(format!("lattice_automaton/{pattern}"), |b| {
            b.iter(|| build_lattice_automaton(&pt, &dfa, budgets.states).unwrap())
        });
        group.bench_function(format!("semiring/{pattern}"), |b| {
            b.iter(|| syntactic_semiring(&pt, &dfa, &budgets).unwrap())
        });
        group.bench_function(format!("lattice_algebra/{pattern}"), |b| {
            b.iter(|| syntactic_lattice_algebra(&pt, &dfa, &budgets).unwrap())
        });
        group.bench_function(format!("reversibility/{pattern}"), |b| {
            b.iter(|| is_reversible(&dfa, &pt, &budgets).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
