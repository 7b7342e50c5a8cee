fn main() {
    std::process::exit(conesec::main_with(std::env::args_os()));
}
