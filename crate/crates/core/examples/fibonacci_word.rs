//! The Fibonacci word by four independent routes, and the codings of d(n).

use fibdir::sequences::{fib_word_stream, seq_range, FibRoute, SeqId};

fn main() -> fibdir::Result<()> {
    let routes = [
        FibRoute::Automaton,
        FibRoute::Coding,
        FibRoute::Morphism,
        FibRoute::Predecessor,
    ];
    let words: Vec<Vec<u8>> = routes.iter().map(|&r| fib_word_stream(r, 100_000)).collect();
    let agree = words.iter().all(|w| *w == words[0]);
    let prefix: String = words[0][..34].iter().map(|b| char::from(b'0' + b)).collect();
    println!("f = {prefix}…");
    println!("four routes agree on 100000 terms: {agree}");

    for id in SeqId::ALL {
        println!("{} = {:?}", id.name(), seq_range(id, 1, 21)?);
    }
    Ok(())
}
