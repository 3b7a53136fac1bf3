use bunchkit_core::generate::*;
use bunchkit_core::logic::{Logic, LogicName};

fn main() {
    let kind = Logic::new(LogicName::Dmbi);
    let report = source_report(&kind, 200, 42);
    for (name, added) in report {
        println!("{name}: +{added}");
    }
}
