use amptiles::bcfw::*;
use amptiles::plabic::*;

fn main() {
    for (n, k) in [(6u8, 1usize), (7, 1), (7, 2), (8, 2)] {
        for d in enumerate_chords(n, k) {
            let r = standard_recipe(&d).unwrap();
            match build_cell(&r) {
                Ok(g) => {
                    let dim = g.dimension().unwrap();
                    if dim != 4 * k { println!("DIM FAIL {:?} dim={}", d.chords, dim); }
                }
                Err(e) => {
                    println!("BUILD FAIL ({n},{k}) {:?}: {e}", d.chords);
                    // try to get the failing product positroid
                    debug_recipe(&r);
                }
            }
        }
    }
}

fn debug_recipe(r: &Recipe) {
    match r {
        Recipe::Product { ground, markers, left, right } => {
            debug_recipe(left);
            debug_recipe(right);
            let gl = build_cell(left);
            let gr = build_cell(right);
            if let (Ok(gl), Ok(gr)) = (gl, gr) {
                let pl = gl.positroid().unwrap();
                let pr = gr.positroid().unwrap();
                if let Ok(prod) = bcfw_product_positroid(&pl, &pr, markers, ground) {
                    if graph_from_positroid(&prod).is_err() {
                        println!("  failing product: B={:?} ground={:?}", markers.tuple(), ground);
                        println!("  left bases: {:?}", pl.bases);
                        println!("  right bases: {:?}", pr.bases);
                        println!("  product k={} bases ({}): {:?}", prod.k, prod.bases.len(), prod.bases);
                    }
                }
            }
        }
        Recipe::Cyc { child } | Recipe::Refl { child } | Recipe::Pre { child, .. } => debug_recipe(child),
        _ => {}
    }
}
