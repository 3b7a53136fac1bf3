use bunchkit_core::generate::{distinct_count, random_algebras};
use bunchkit_core::logic::{Logic, LogicName};
use std::time::Instant;

fn main() {
    for name in LogicName::ALL {
        let t = Instant::now();
        let algebras = random_algebras(&Logic::new(name), 200, 42);
        println!(
            "{name}: {} algebras ({} distinct) in {:?}",
            algebras.len(),
            distinct_count(&algebras),
            t.elapsed()
        );
    }
}
