#include <cstdio>

int main() {
    std::puts("qwsr: subcommands not wired up yet");
    return 0;
}
