use std::time::Instant;
fn main() {
    let seed = qsi::checks::DEFAULT_SEED;
    let checks: Vec<(&str, Box<dyn Fn() -> qsi::report::Report>)> = vec![
        ("lemma1", Box::new(|| qsi::checks::check_lemma1())),
        ("fundamental", Box::new(|| qsi::checks::check_fundamental_matrix())),
        ("trivialization", Box::new(|| qsi::checks::check_trivialization())),
        ("constants", Box::new(move || qsi::checks::check_constants(&qsi::checks::default_constants_window()))),
        ("simplicity", Box::new(move || qsi::checks::check_simplicity(seed))),
        ("hopf-axioms", Box::new(move || qsi::checks::check_hopf_axioms(seed))),
        ("coaction", Box::new(|| qsi::checks::check_coaction())),
        ("torsor", Box::new(move || qsi::checks::check_torsor(&qsi::checks::default_torsor_window()))),
        ("galois", Box::new(move || qsi::checks::check_galois(&qsi::checks::default_coinvariants_window()))),
        ("category", Box::new(move || qsi::checks::check_category(seed))),
        ("operator-identities", Box::new(move || qsi::checks::check_operator_identities(seed))),
        ("warmup", Box::new(|| qsi::checks::check_warmup())),
        ("roundtrip", Box::new(move || qsi::checks::check_roundtrip(seed))),
    ];
    for (name, f) in checks {
        let t = Instant::now();
        let r = f();
        println!("{name:25} {:>8.2?} {}", t.elapsed(), if r.passed() { "pass" } else { "FAIL" });
    }
}
