//! Compare the bundled b-file fixtures with the generated sequences.

use fibdir::sequences::SeqId;
use fibdir::verification::{bfile_crosscheck, Coding};

fn main() -> fibdir::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");

    let r = bfile_crosscheck(
        dir.join("fibonacci_word_b.txt"),
        SeqId::F,
        &Coding::identity(),
        10_000,
        None,
    )?;
    print!("{r}");

    let coding: Coding = "1:0,2:1,3:2".parse()?;
    let r = bfile_crosscheck(dir.join("morphic_123_b.txt"), SeqId::D, &coding, 10_000, Some(0))?;
    print!("{r}");

    if let Err(e) = bfile_crosscheck(dir.join("corrupted_b.txt"), SeqId::F, &coding, 3, None) {
        println!("corrupted fixture: {e}");
    }
    Ok(())
}
