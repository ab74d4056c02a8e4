//! Fixed inputs shared by the benchmarks.

use rauzykit::Pair;

/// The seven-letter pair with profile {3,3}.
pub const WORKED: &str = "a b c d e f g | g c e b f d a";

/// The reversal pair `1 2 .. n | n .. 2 1` over the first `n` letters.
pub fn reversal(n: usize) -> Pair {
    let names: Vec<String> = (0..n)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let top = names.join(" ");
    let bottom: Vec<&str> = names.iter().rev().map(String::as_str).collect();
    Pair::parse(&format!("{top} | {}", bottom.join(" "))).expect("reversal pair")
}

pub fn worked() -> Pair {
    Pair::parse(WORKED).expect("worked example")
}
