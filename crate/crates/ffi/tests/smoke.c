#include <stdio.h>
#include <string.h>
#include "bircalc.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    int64_t deg = 0;
    CHECK(bircalc_link_degree(BIRCALC_SPACE_P3, 14, 11, &deg) == BIRCALC_STATUS_OK);
    CHECK(deg == 19);
    CHECK(bircalc_link_degree(BIRCALC_SPACE_P3, 3, 7, &deg) == BIRCALC_STATUS_DOMAIN);
    CHECK(strstr(bircalc_last_error_message(), "(2,8)") != NULL);

    uint32_t w[3] = {1, 2, 3};
    BircalcPolynomial *f = NULL;
    CHECK(bircalc_poly_parse("x1^2 + x3", w, 3, &f) == BIRCALC_STATUS_OK);
    uint64_t v = 0;
    CHECK(bircalc_poly_valuation(f, &v) == BIRCALC_STATUS_OK && v == 2);
    bircalc_poly_free(f);

    char *s = NULL;
    CHECK(bircalc_word_normalize(NULL, "chi:a g:x g:x^-1 chi:a chi:b", &s) == BIRCALC_STATUS_OK);
    CHECK(strcmp(s, "chi:b") == 0);
    bircalc_string_free(s);

    BircalcCatalog *cat = NULL;
    CHECK(bircalc_catalog_parse("p3 2 8 a automorphism_free\np3 6 9 b automorphism_free\n", &cat) == BIRCALC_STATUS_OK);
    BircalcCertificate cert;
    CHECK(bircalc_word_certify(cat, "(a b)", &cert) == BIRCALC_STATUS_OK);
    CHECK(cert.certified && cert.field_automorphism_obstruction && !cert.conjugate);
    CHECK(strcmp(cert.witness, "a") == 0);
    bircalc_certificate_clear(&cert);
    bircalc_catalog_free(cat);

    puts("ok");
    return 0;
}
