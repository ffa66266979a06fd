//! Prints the C3v double-group character table and reduces the dangling-bond
//! representation.

use nvlevels::symm::{ClassId, DanglingBondRep, DoubleGroup, RepCharacters};

fn main() -> nvlevels::Result<()> {
    let g = DoubleGroup::c3v();
    print!("{:>7}", "");
    for c in ClassId::ALL {
        print!("{:>8}", c.label());
    }
    println!();
    for ir in g.irreps() {
        print!("{:>7}", ir.name.label());
        for chi in ir.characters {
            if chi.im == 0.0 {
                print!("{:>8}", chi.re);
            } else {
                print!("{:>8}", format!("{}i", chi.im));
            }
        }
        println!();
    }

    let gamma = g.characters_of(&DanglingBondRep);
    let parts = g.reduce(&gamma)?;
    let text: Vec<String> = parts.iter().map(|(k, n)| format!("{n}{k}")).collect();
    println!("\ndangling bonds: {}", text.join(" + "));

    let e = RepCharacters::from(g.irrep(nvlevels::symm::IrrepName::E));
    println!("E x E = {:?}", g.reduce(&e.product(&e))?);
    Ok(())
}
