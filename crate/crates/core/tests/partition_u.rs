use aperiodic_core::data::partition_u_segments;
use aperiodic_core::exactnum::Golden;
use aperiodic_core::geometry::partition_from_segments;

#[test]
fn nineteen_atoms_of_unit_total_area() {
    let p = partition_from_segments(&partition_u_segments(), [Golden::one(), Golden::one()]).unwrap();
    assert_eq!(p.len(), 19);
    assert_eq!(p.area(), Golden::one());
    assert!(p.is_partition());
}
