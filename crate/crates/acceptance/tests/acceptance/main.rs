//! Runs every acceptance check and prints one PASS or FAIL line per
//! criterion. Exits non-zero when any check fails.

mod fixtures;
mod language;
mod platform;
mod segmentation;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

pub type Check = Result<(), String>;

/// Fails the enclosing check with a formatted message.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

type Criterion = (&'static str, fn() -> Check);

const CHECKS: &[Criterion] = &[
    ("thirteen vocalized readings strip to one skeleton", language::stripping),
    ("present tense of the six verb patterns", language::conjugation),
    ("plural, dual and tanwin declension", language::declension),
    ("active, passive and place noun derivation", language::derivation),
    ("segmentation agrees with a brute-force closure", segmentation::oracle),
    ("no analysis exceeds five morphemes", segmentation::ceiling),
    ("search agrees with a linear scan, shortest first", platform::search),
    ("rotation serves each member once, then exhausts", platform::rotation),
    ("seeded exercises grade perfectly on their keys", platform::exercise_soundness),
    ("extraction finds pronoun, adverb and demonstrative", language::extraction),
    ("metadata rejections list exactly the missing fields", platform::metadata),
    ("service hides keys, separates roles, grades idempotently", platform::service),
];

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in CHECKS.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", CHECKS.len() - failed, CHECKS.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
