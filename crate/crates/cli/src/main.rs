fn main() {
    std::process::exit(orbitlab::main_with_args(std::env::args_os()));
}
