use cotton_lab::catalog::{build_algebra, Family, FamilySpec};
use cotton_lab::soliton_frame::{algebraic_solve, solve_algebra};

fn main() -> cotton_lab::Result<()> {
    let alg = build_algebra(&FamilySpec::new(Family::II, &[1.0, 1.0]))?;
    let family = solve_algebra(&alg);
    assert!(family.exists);
    println!(
        "λ = {}, X = {:?} + span{:?}",
        family.lambda, family.particular, family.kernel_basis
    );

    let ia = build_algebra(&FamilySpec::new(Family::Ia, &[0.0, 0.0, 2.0]))?;
    println!("algebraic λ = {}", algebraic_solve(&ia).lambda); // −16
    Ok(())
}
