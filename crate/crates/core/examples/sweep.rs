//! Sweep every character mod 360: evaluate S_χ(360, 2) by two independent
//! routes, check they agree, and print one line per character.
//!
//! Run with `cargo run -p menon-core --example sweep`.

use menon_core::{menon_closed, menon_grouped, CharacterGroup, Error};

fn main() -> Result<(), Error> {
    let group = CharacterGroup::new(360)?;
    for chi in group.characters()? {
        let fast = menon_closed(&chi, 2);
        let slow = menon_grouped(&chi, 2)?;
        assert_eq!(fast.value, slow.value);
        println!(
            "chi_{:<2} (conductor {:>3}): S = {}",
            chi.index(),
            chi.conductor(),
            fast.value
        );
    }
    Ok(())
}
