#include <cstdio>

int main() {
    std::puts("terracini: CLI not wired up yet");
    return 1;
}
