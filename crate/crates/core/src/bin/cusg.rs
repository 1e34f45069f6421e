fn main() {
    std::process::exit(cusg::cli::main_with(std::env::args_os()));
}
