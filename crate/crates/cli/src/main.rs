fn main() {
    std::process::exit(interflow::run());
}
