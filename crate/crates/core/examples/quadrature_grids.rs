// Sphere and box grids, their JSON form, and the dyadic cap family.

use std::sync::Arc;

use restriction_lab::grids::{cap_members, enumerate_caps, make_sphere_grid, sphere_area, SphereGrid, UniformGrid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let circle = make_sphere_grid(1, 64)?;
    let sphere = make_sphere_grid(2, 16)?;
    for g in [&circle, &sphere] {
        println!(
            "S^{}: {} nodes, total weight {:.15} (area {:.15})",
            g.d(),
            g.len(),
            g.total_weight(),
            sphere_area(g.d())
        );
    }
    let json = serde_json::to_string(&circle)?;
    let back: SphereGrid = serde_json::from_str(&json)?;
    assert_eq!(back, circle);

    let x_box = UniformGrid::cube(2, 5.0, 11)?;
    println!("box: {} nodes, spacing {}, volume {}", x_box.len(), x_box.spacing(0), x_box.volume());

    let grid = Arc::new(make_sphere_grid(1, 1024)?);
    let caps = enumerate_caps(1, 2, 4)?;
    let members = cap_members(&caps, &grid);
    for level in 2..=4 {
        let n = caps.iter().filter(|c| c.level == level).count();
        println!("level {level}: {n} caps over both axes");
    }
    let covered = (0..grid.len()).all(|i| members.iter().any(|m| m.contains(&i)));
    assert!(covered);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
