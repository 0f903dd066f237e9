//! Parallel against sequential on the main kernels. `cargo bench -p monfiber`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monfiber::decompose::irreducible_decomposition;
use monfiber::lang::{evaluate, parse_program, Value};
use monfiber::par;
use monfiber::resolution::{betti_table, BettiOptions};
use monfiber::symbolic::{symbolic_power, SymbolicMode};
use monfiber::verify::explore::{explore, Question};
use monfiber::verify::generate::GeneratorConfig;
use monfiber::verify::{run_suite, SuiteConfig};
use monfiber::{FieldChar, MonomialIdeal};

fn ideal(program: &str) -> MonomialIdeal {
    match evaluate(&parse_program(program).unwrap(), FieldChar::new(2).unwrap()).unwrap() {
        Value::Ideal(a) => a,
        v => panic!("{v:?}"),
    }
}

const MODES: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn both(c: &mut Criterion, group: &str, mut f: impl FnMut()) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for (name, seq) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_sequential(seq);
            b.iter(&mut f);
        });
    }
    par::set_sequential(false);
    g.finish();
}

fn betti(c: &mut Criterion) {
    let a = ideal("ring R=[a b c d e]; (a*b, b*c, c*d, d*e, e*a)^2");
    let p = FieldChar::new(2).unwrap();
    both(c, "betti cycle^2", || {
        betti_table(&a, p).unwrap();
    });
}

fn decompose(c: &mut Criterion) {
    let a =
        ideal("ring R=[a b c d e]; (a^4, a^3*b, a*b^3, b^4)*(c,d,e)^7 + (a^2*b^2)*(c^7,d^7,e^7)");
    both(c, "irreducible decomposition", || {
        irreducible_decomposition(&a).unwrap();
    });
    let b = ideal("ring R=[a b c d e f]; (a*b*c, c*d*e, e*f*a, b*d*f)");
    both(c, "symbolic cube", || {
        symbolic_power(&b, 3, SymbolicMode::Ass).unwrap();
    });
}

fn suite(c: &mut Criterion) {
    let mut cfg = SuiteConfig {
        instances: 8,
        ..SuiteConfig::default()
    };
    cfg.generator.s_max = 2;
    both(c, "suite 8 instances", || {
        run_suite(&cfg).unwrap();
    });
    let gen = GeneratorConfig::default();
    both(c, "explore reg-lb 50", || {
        explore(
            Question::RegLb,
            &gen,
            50,
            BettiOptions::default(),
            &mut std::io::sink(),
        )
        .unwrap();
    });
}

criterion_group!(benches, betti, decompose, suite);
criterion_main!(benches);
