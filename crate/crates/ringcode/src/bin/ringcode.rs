fn main() {
    std::process::exit(ringcode::run());
}
