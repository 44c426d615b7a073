#ifndef QFACTOR_H
#define QFACTOR_H

/* C interface to the qfactor library. Objects are opaque handles holding a
 * factor system or a dynamical system; payloads cross the boundary as JSON
 * strings in the factor_system/v1 and dynamical_system/v1 formats. Every
 * operation that runs to completion writes a report (JSON with an embedded
 * plain-text rendering under "text"); the status code carries the verdict.
 *
 * Strings returned through char** outputs are owned by the caller and must
 * be released with qf_string_free. qf_last_error points at thread-local
 * storage and is valid until the next qfactor call on the same thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
  QF_OK = 0,               /* operation ran and the verdict is positive */
  QF_STRUCTURAL_ERROR = 1, /* malformed input, unknown name, bad shapes */
  QF_CHECK_FAILED = 2,     /* well-formed input failing a mathematical check */
  QF_UNDECIDED = 3         /* search budget exhausted without a verdict */
} qf_status;

typedef struct qf_object qf_object;

const char* qf_version(void);

/* Message of the most recent failure on this thread, or an empty string. */
const char* qf_last_error(void);

void qf_string_free(char* s);
void qf_object_free(qf_object* obj);

/* "factor_system" or "dynamical_system". */
const char* qf_object_kind(const qf_object* obj);

/* Decode a tagged JSON document, dispatching on its "format" field. */
qf_status qf_parse(const char* json, qf_object** out);
qf_status qf_to_json(const qf_object* obj, char** json_out);

/* Built-in example systems, by name. */
qf_status qf_fixture(const char* name, qf_object** out);
qf_status qf_fixture_list(char** json_out);

/* Builder names accepted wherever a quantum group is referenced. */
qf_status qf_builtin_groups(char** json_out);

/* Decompose the regular corepresentation of a named quantum group and
 * return the catalog summary (irreducibles, dimensions, fusion rules). */
qf_status qf_catalog_build(const char* group_name, uint64_t seed, char** catalog_json_out);

/* Axioms of the object itself: factor system axioms, or *-algebra plus
 * coaction axioms. tol <= 0 selects the built-in default of 1e-9. */
qf_status qf_validate(const qf_object* obj, double tol, char** report_json_out);

/* Build the dynamical system generated by a factor system. The report
 * covers the factor system axioms, the tensor functor obligations and the
 * verification of the built coaction. */
qf_status qf_reconstruct(const qf_object* fs, double tol, qf_object** ds_out,
                         char** report_json_out);

/* Extract the factor system of a free dynamical system. The seed rotates
 * the multiplicity bases, so different seeds give conjugate systems. */
qf_status qf_extract(const qf_object* ds, uint64_t seed, double tol, qf_object** fs_out,
                     char** report_json_out);

/* Freeness of the action: the density criterion and the multiplication
 * criterion must both pass. A factor system input is reconstructed first
 * and additionally checked at the factor system level. */
qf_status qf_check_free(const qf_object* obj, double tol, char** report_json_out);

/* Cleftness of the system. A dynamical system input is extracted first. */
qf_status qf_check_cleft(const qf_object* obj, uint64_t seed, double tol,
                         char** report_json_out);

/* Search for a conjugation witness between two systems. QF_OK means a
 * witness was found, QF_CHECK_FAILED means the systems are provably not
 * conjugate, QF_UNDECIDED means the restart budget ran out. */
qf_status qf_conjugate(const qf_object* a, const qf_object* b, uint64_t seed, double tol,
                       char** report_json_out);

/* Positive ring homomorphisms of the fusion ring of a named quantum group,
 * listed in the report notes. */
qf_status qf_fusion_homs(const char* group_name, uint64_t seed, double tol,
                         char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif
