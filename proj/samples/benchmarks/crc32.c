/* Bitwise CRC-32 over a pseudo-random buffer, with a built-in self-test.
 * usage: crc32 [loop-count]; exits 0 when the checksum is correct. */

#include <stdint.h>
#include <stdlib.h>

#define BUFLEN 4096

static uint32_t crc32(const uint8_t *data, size_t len) {
  uint32_t crc = 0xFFFFFFFFu;
  for (size_t i = 0; i < len; ++i) {
    crc ^= data[i];
    for (int bit = 0; bit < 8; ++bit)
      crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

int main(int argc, char **argv) {
  long loops = argc > 1 ? strtol(argv[1], 0, 10) : 1;

  uint8_t buf[BUFLEN];
  uint32_t state = 0x12345678u;
  for (size_t i = 0; i < BUFLEN; ++i) {
    state = 1103515245u * state + 12345u;
    buf[i] = (uint8_t)(state >> 16);
  }

  volatile uint32_t sink = 0;
  for (long i = 0; i < loops; ++i)
    sink = crc32(buf, BUFLEN);
  return sink == 0x310C3E6Cu ? 0 : 1;
}
