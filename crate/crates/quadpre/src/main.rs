fn main() {
    std::process::exit(quadpre::run(std::env::args_os()));
}
