//! A classical and a mesh pattern that are Wilf-equivalent inside Av(231).

use pattern_forge::bisc::enumerate_avoiders;
use pattern_forge::AnyPattern;

fn main() -> pattern_forge::Result<()> {
    let classical: Vec<AnyPattern> = vec!["231".parse()?, "654321".parse()?];
    let mesh: Vec<AnyPattern> = vec!["231".parse()?, "126345|{(1,6),(4,5),(4,6)}".parse()?];
    println!("{:>2} {:>8} {:>8}", "n", "classic", "mesh");
    for n in 1..=9 {
        let a = enumerate_avoiders(&classical, n)?.len();
        let b = enumerate_avoiders(&mesh, n)?.len();
        println!("{n:>2} {a:>8} {b:>8}");
    }
    Ok(())
}
